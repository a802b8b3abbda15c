//! Ideal-theoretic checks on finite point sets without Gröbner bases:
//! Hilbert functions by evaluation rank, complete intersections, zero loci of
//! products of binary forms and resultant-based containment.

use std::collections::{BTreeSet, HashSet};

use serde::Serialize;

use crate::elim::{res_z, BinaryForm, CoordChange};
use crate::error::{Error, Result};
use crate::field::{FieldElement, TowerRef};
use crate::geometry::{common_tower, meet, ProjLine, ProjPoint};
use crate::par;
use crate::poly::{monomials_of_degree, resultant, MultiPoly, UniPoly, Var};

/// Distinct points over a common tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<ProjPoint>,
    tower: TowerRef,
}

impl PointSet {
    pub fn new(points: Vec<ProjPoint>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::DegenerateInput("empty point set".into()));
        }
        let firsts: Vec<FieldElement> = points.iter().flat_map(|p| p.coords().iter().cloned()).collect();
        let tower = common_tower(&firsts)?;
        let points: Vec<ProjPoint> = points.iter().map(|p| p.lift_to(&tower)).collect::<Result<_>>()?;
        let mut seen = HashSet::new();
        for p in &points {
            if !seen.insert(p.clone()) {
                return Err(Error::DegenerateInput(format!("repeated point {p}")));
            }
        }
        Ok(PointSet { points, tower })
    }

    pub fn points(&self) -> &[ProjPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn tower(&self) -> &TowerRef {
        &self.tower
    }

    pub fn as_set(&self) -> BTreeSet<ProjPoint> {
        self.points.iter().cloned().collect()
    }
}

fn binom2(n: i64) -> i64 {
    if n < 2 {
        0
    } else {
        n * (n - 1) / 2
    }
}

/// Value at degree `t` of the Hilbert function of the points' coordinate ring.
pub fn hilbert_function(ps: &PointSet, t: u32) -> usize {
    let coords: Vec<[FieldElement; 3]> = ps.points.iter().map(|p| p.coords().clone()).collect();
    MultiPoly::evaluation_matrix(&coords, &monomials_of_degree(t), &ps.tower).rank()
}

/// Numerator of a Hilbert series `N(T) / (1 - T)^3`, as `(shift, signed multiplicity)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BettiSpec {
    pub numerator: Vec<(u32, i64)>,
    pub expected_cardinality: usize,
}

impl BettiSpec {
    /// Requires `N(1) = 0` and a positive limiting value.
    pub fn from_numerator(numerator: Vec<(u32, i64)>) -> Result<Self> {
        if numerator.iter().map(|(_, m)| m).sum::<i64>() != 0 {
            return Err(Error::SpecInconsistent("numerator does not vanish at T = 1".into()));
        }
        let spec = BettiSpec { numerator, expected_cardinality: 0 };
        let far = spec.max_shift() + 3;
        let (a, b) = (spec.predicted(far), spec.predicted(far + 1));
        if a != b || a <= 0 {
            return Err(Error::SpecInconsistent(format!("numerator does not stabilize ({a}, {b})")));
        }
        Ok(BettiSpec { expected_cardinality: a as usize, ..spec })
    }

    pub fn max_shift(&self) -> u32 {
        self.numerator.iter().map(|(a, _)| *a).max().unwrap_or(0)
    }

    /// `sum m * C(t - a + 2, 2)`.
    pub fn predicted(&self, t: u32) -> i64 {
        self.numerator.iter().map(|&(a, m)| m * binom2(t as i64 - a as i64 + 2)).sum()
    }

    /// Default check range: the largest shift plus two.
    pub fn default_t_max(&self) -> u32 {
        self.max_shift() + 2
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct HilbertRow {
    pub t: u32,
    pub computed: usize,
    pub predicted: i64,
}

#[derive(Debug, Clone, Serialize)]
pub struct HilbertReport {
    pub table: Vec<HilbertRow>,
    pub consistent: bool,
    pub stabilizes_at: usize,
    /// Degrees at which the points first fail to impose independent conditions, i.e. `HF(t) < C(t + 2, 2)`.
    pub first_drop: Option<u32>,
}

/// Compares the computed Hilbert function with the one implied by `spec` for `t <= t_max`.
pub fn hilbert_consistency(ps: &PointSet, spec: &BettiSpec, t_max: u32) -> Result<HilbertReport> {
    if spec.expected_cardinality != ps.len() {
        return Err(Error::SpecInconsistent(format!(
            "numerator stabilizes to {} but the set has {} points",
            spec.expected_cardinality,
            ps.len()
        )));
    }
    let degrees: Vec<u32> = (0..=t_max).collect();
    let values = par::map(&degrees, |&t| hilbert_function(ps, t));
    let table: Vec<HilbertRow> = degrees
        .iter()
        .zip(values)
        .map(|(&t, computed)| HilbertRow { t, computed, predicted: spec.predicted(t) })
        .collect();
    let consistent = table.iter().all(|r| r.computed as i64 == r.predicted) && table.last().map(|r| r.computed) == Some(ps.len());
    let first_drop = table.iter().find(|r| (r.computed as i64) < binom2(r.t as i64 + 2)).map(|r| r.t);
    Ok(HilbertReport { stabilizes_at: table.last().map_or(0, |r| r.computed), table, consistent, first_drop })
}

/// Clause-by-clause record of a complete-intersection certificate.
#[derive(Debug, Clone, Serialize)]
pub struct CiCertificate {
    pub vanish: bool,
    pub count: bool,
    pub coprime: bool,
    pub transversal: bool,
}

impl CiCertificate {
    pub fn certified(&self) -> bool {
        self.vanish && self.count && self.coprime && self.transversal
    }
}

fn coprime(f: &MultiPoly, g: &MultiPoly) -> Result<bool> {
    let mut checked = false;
    for v in Var::ALL {
        if f.degree_in(v) == 0 || g.degree_in(v) == 0 {
            continue;
        }
        checked = true;
        if resultant(f, g, v)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(checked)
}

/// Certifies `V(f, g) = ps` by vanishing, degree count, coprimality and
/// transversality at every point.
pub fn verify_complete_intersection(ps: &PointSet, f: &MultiPoly, g: &MultiPoly) -> Result<CiCertificate> {
    if !f.is_homogeneous() || !g.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let mut vanish = true;
    let mut transversal = true;
    let (gf, gg) = (f.gradient(), g.gradient());
    for p in ps.points() {
        let c = p.coords();
        if !f.eval(c)?.is_zero() || !g.eval(c)?.is_zero() {
            vanish = false;
            break;
        }
        let a: Vec<FieldElement> = gf.iter().map(|d| d.eval(c)).collect::<Result<_>>()?;
        let b: Vec<FieldElement> = gg.iter().map(|d| d.eval(c)).collect::<Result<_>>()?;
        let cross = [
            &(&a[1] * &b[2]) - &(&a[2] * &b[1]),
            &(&a[2] * &b[0]) - &(&a[0] * &b[2]),
            &(&a[0] * &b[1]) - &(&a[1] * &b[0]),
        ];
        if cross.iter().all(FieldElement::is_zero) {
            transversal = false;
        }
    }
    let count = ps.len() as u32 == f.degree().unwrap_or(0) * g.degree().unwrap_or(0);
    let cert = CiCertificate { vanish, count, coprime: coprime(f, g)?, transversal };
    let failing = [("a: vanishing", cert.vanish), ("b: count", cert.count), ("c: coprime", cert.coprime), ("d: transversal", cert.transversal)]
        .into_iter()
        .find(|(_, ok)| !ok);
    match failing {
        Some((clause, _)) => Err(Error::CertificateFailure(clause.into())),
        None => Ok(cert),
    }
}

/// Linear factors of a form in at most two of the variables, with roots in `root_tower`.
pub fn split_binary_form(p: &MultiPoly, root_tower: &TowerRef) -> Result<Vec<ProjLine>> {
    if !p.is_homogeneous() || p.is_zero() {
        return Err(Error::NotHomogeneous);
    }
    let used: Vec<Var> = Var::ALL.into_iter().filter(|&v| p.degree_in(v) > 0).collect();
    let (u, w) = match used.as_slice() {
        [a, b] => (*a, *b),
        [a] => {
            let mut c = [FieldElement::zero(root_tower), FieldElement::zero(root_tower), FieldElement::zero(root_tower)];
            c[a.index()] = FieldElement::one(root_tower);
            return Ok(vec![ProjLine::new(c)?]);
        }
        _ => return Err(Error::DegenerateInput(format!("{p} is not a binary form"))),
    };
    let d = p.degree().unwrap_or(0) as usize;
    let t = p.tower().clone();
    let mut coeffs = vec![FieldElement::zero(&t); d + 1];
    for (e, c) in p.terms() {
        coeffs[e[u.index()] as usize] = c.clone();
    }
    let form = BinaryForm { affine: UniPoly::new(&t, coeffs), degree: d };
    let mut out = Vec::new();
    for (root, _) in form.roots_in(root_tower)? {
        let mut c = [FieldElement::zero(root_tower), FieldElement::zero(root_tower), FieldElement::zero(root_tower)];
        match root {
            // u/w = r, i.e. u - r w = 0
            Some(r) => {
                c[u.index()] = FieldElement::one(root_tower);
                c[w.index()] = -&r;
            }
            None => c[w.index()] = FieldElement::one(root_tower),
        }
        out.push(ProjLine::new(c)?);
    }
    Ok(out)
}

/// Common zero locus of generators given as products of binary forms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Locus {
    /// Lines contained in every generator's zero set.
    pub lines: Vec<ProjLine>,
    /// Isolated points.
    pub points: Vec<ProjPoint>,
}

pub fn generator_zero_locus(gens: &[Vec<MultiPoly>], root_tower: &TowerRef) -> Result<Locus> {
    if gens.is_empty() {
        return Err(Error::DegenerateInput("no generators".into()));
    }
    let sets: Vec<Vec<ProjLine>> = gens
        .iter()
        .map(|factors| -> Result<Vec<ProjLine>> {
            let mut v = Vec::new();
            for f in factors {
                v.extend(split_binary_form(f, root_tower)?);
            }
            v.sort();
            v.dedup();
            Ok(v)
        })
        .collect::<Result<_>>()?;
    let lines: Vec<ProjLine> = sets[0].iter().filter(|l| sets[1..].iter().all(|s| s.contains(l))).cloned().collect();
    let mut all: Vec<ProjLine> = sets.iter().flatten().cloned().collect();
    all.sort();
    all.dedup();
    let products: Vec<MultiPoly> = gens
        .iter()
        .map(|fs| fs.iter().fold(MultiPoly::one(root_tower), |acc, f| &acc * f))
        .collect();
    let mut points = BTreeSet::new();
    for (a, b) in par::pairs(all.len()) {
        let p = meet(&all[a], &all[b])?;
        if lines.iter().any(|l| l.contains(&p)) {
            continue;
        }
        let mut ok = true;
        for g in &products {
            if !g.eval(p.coords())?.is_zero() {
                ok = false;
                break;
            }
        }
        if ok {
            points.insert(p);
        }
    }
    Ok(Locus { lines, points: points.into_iter().collect() })
}

/// `V(gens) = ps`, or `MismatchedLocus` describing the difference.
pub fn generator_zero_locus_check(ps: &PointSet, gens: &[Vec<MultiPoly>], root_tower: &TowerRef) -> Result<Locus> {
    let locus = generator_zero_locus(gens, root_tower)?;
    if !locus.lines.is_empty() {
        return Err(Error::MismatchedLocus(format!("locus contains {} lines", locus.lines.len())));
    }
    let want: BTreeSet<ProjPoint> = ps.points().iter().map(|p| p.lift_to(root_tower)).collect::<Result<_>>()?;
    let got: BTreeSet<ProjPoint> = locus.points.iter().cloned().collect();
    if want != got {
        return Err(Error::MismatchedLocus(format!(
            "{} expected points missing, {} extra points",
            want.difference(&got).count(),
            got.difference(&want).count()
        )));
    }
    Ok(locus)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Containment {
    Certified,
    Inconclusive,
}

fn remaining_after(f: &MultiPoly, g: &MultiPoly, hs: &[MultiPoly], change: &CoordChange) -> Result<BinaryForm> {
    let fc = change.apply_poly(f);
    let base = res_z(&fc, &change.apply_poly(g))?;
    if base.is_zero() {
        return Err(Error::CommonComponent);
    }
    let mut rest = base.squarefree_part();
    for h in hs {
        let r = res_z(&fc, &change.apply_poly(h))?;
        if r.is_zero() {
            return Ok(BinaryForm { affine: UniPoly::constant(FieldElement::one(rest.affine.tower())), degree: 0 });
        }
        let common = rest.gcd(&r);
        let inf = rest.order_at_infinity() - common.order_at_infinity();
        let quotient = rest.affine.divrem(&common.affine).0;
        let degree = quotient.degree().unwrap_or(0) + inf;
        rest = BinaryForm { affine: quotient, degree };
    }
    Ok(rest)
}

/// Sufficient test for `V(f, g) ⊆ V(h_1 ... h_k)`: the square-free part of
/// `Res_z(f, g)` must divide `prod Res_z(f, h_i)` under both seeds.
pub fn variety_containment_factored(f: &MultiPoly, g: &MultiPoly, hs: &[MultiPoly], seeds: (u64, u64)) -> Result<Containment> {
    let zeros: Vec<FieldElement> = [f, g].into_iter().chain(hs).map(|p| FieldElement::zero(p.tower())).collect();
    let t = common_tower(&zeros)?;
    let (f, g) = (&f.lift_to(&t)?, &g.lift_to(&t)?);
    let hs: Vec<MultiPoly> = hs.iter().map(|h| h.lift_to(&t)).collect::<Result<_>>()?;
    let hs = hs.as_slice();
    let mut forms: Vec<&MultiPoly> = vec![f, g];
    forms.extend(hs.iter());
    for seed in [seeds.0, seeds.1] {
        let change = CoordChange::seeded_for(seed, &forms);
        if remaining_after(f, g, hs, &change)?.degree != 0 {
            return Ok(Containment::Inconclusive);
        }
    }
    Ok(Containment::Certified)
}

pub fn variety_containment(f: &MultiPoly, g: &MultiPoly, h: &MultiPoly, seeds: (u64, u64)) -> Result<Containment> {
    variety_containment_factored(f, g, std::slice::from_ref(h), seeds)
}
