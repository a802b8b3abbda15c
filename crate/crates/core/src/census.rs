//! Coordinate-free intersection statistics of conic arrangements.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::contact::{contact_order, PlaneCurve, DEFAULT_CAP};
use crate::elim::{fiber_points, locate_intersections, res_z, BinaryForm, CoordChange};
use crate::error::{Error, Result};
use crate::field::TowerRef;
use crate::geometry::{Conic, ProjLine, ProjPoint};
use crate::par;
use crate::poly::{restrict_to_line, MultiPoly, Var};

/// The two fixed coordinate-change seeds.
pub const SEEDS: (u64, u64) = (1, 2);

fn pair_form(q1: &Conic, q2: &Conic, change: &CoordChange) -> Result<BinaryForm> {
    if q1 == q2 {
        return Err(Error::CommonComponent);
    }
    let form = res_z(&change.apply_poly(&q1.to_poly()), &change.apply_poly(&q2.to_poly()))?;
    if form.is_zero() {
        return Err(Error::CommonComponent);
    }
    Ok(form)
}

/// Multiplicity partition of 4 describing how two conics meet, required to
/// agree under both seeds.
pub fn conic_pair_pattern(q1: &Conic, q2: &Conic, seeds: (u64, u64)) -> Result<Vec<u32>> {
    let polys = [q1.to_poly(), q2.to_poly()];
    let refs: Vec<&MultiPoly> = polys.iter().collect();
    let a = pair_form(q1, q2, &CoordChange::seeded_for(seeds.0, &refs))?.pattern();
    let b = pair_form(q1, q2, &CoordChange::seeded_for(seeds.1, &refs))?.pattern();
    if a != b {
        return Err(Error::ProjectionCollision);
    }
    Ok(a)
}

/// Intersection points of two conics with multiplicities, when their
/// coordinates lie in `root_tower`.
pub fn conic_pair_points(q1: &Conic, q2: &Conic, root_tower: &TowerRef) -> Result<Vec<(ProjPoint, u32)>> {
    if q1 == q2 {
        return Err(Error::CommonComponent);
    }
    locate_intersections(&q1.to_poly(), &q2.to_poly(), root_tower).map(|(pts, _)| pts)
}

/// Common points of three conics, verified on all three.
#[derive(Debug, Clone, Default)]
pub struct TripleCertificate {
    pub points: Vec<ProjPoint>,
    /// Common projected roots whose fibres could not be resolved in the tower.
    pub unresolved: usize,
}

/// Common points of `q1, q2, q3` from the gcd of the two resultant forms
/// `Res(q1, q2)` and `Res(q1, q3)` in the coordinates of `seed`.
pub fn triple_coincidence(q1: &Conic, q2: &Conic, q3: &Conic, seed: u64, root_tower: &TowerRef) -> Result<TripleCertificate> {
    let polys = [q1.to_poly(), q2.to_poly(), q3.to_poly()];
    let change = CoordChange::seeded_for(seed, &polys.iter().collect::<Vec<_>>());
    let f12 = pair_form(q1, q2, &change)?;
    let f13 = pair_form(q1, q3, &change)?;
    pair_form(q2, q3, &change)?;
    triple_from_forms(q1, q2, q3, &f12, &f13, &change, root_tower)
}

fn triple_from_forms(
    q1: &Conic,
    q2: &Conic,
    q3: &Conic,
    f12: &BinaryForm,
    f13: &BinaryForm,
    change: &CoordChange,
    root_tower: &TowerRef,
) -> Result<TripleCertificate> {
    let g = f12.gcd(f13);
    let mut cert = TripleCertificate::default();
    if g.degree == 0 {
        return Ok(cert);
    }
    let g = g.squarefree_part();
    let roots = match g.roots_in(root_tower) {
        Ok(r) => r,
        Err(Error::FieldTooSmall(_)) => {
            cert.unresolved = g.degree;
            return Ok(cert);
        }
        Err(e) => return Err(e),
    };
    let p1 = change.apply_poly(&q1.to_poly());
    let p2 = change.apply_poly(&q2.to_poly());
    let p3 = q3.to_poly();
    for (root, _) in roots {
        let fibre = match fiber_points(&p1, &p2, &root, root_tower) {
            Ok(f) => f,
            Err(Error::FieldTooSmall(_)) => {
                cert.unresolved += 1;
                continue;
            }
            Err(e) => return Err(e),
        };
        for pt in fibre {
            let p = ProjPoint::new(change.to_old(&pt))?;
            if p3.eval(p.coords())?.is_zero() {
                cert.points.push(p);
            }
        }
    }
    Ok(cert)
}

/// A point claimed to lie on exactly the listed conics.
#[derive(Debug, Clone)]
pub struct ClaimedPoint {
    pub point: ProjPoint,
    pub conics: Vec<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpecialPoint {
    pub point: ProjPoint,
    pub conics: Vec<usize>,
    /// Contact order of each incident pair at the point.
    pub contacts: Vec<((usize, usize), usize)>,
}

impl SpecialPoint {
    /// Sum of pairwise contact orders at the point.
    pub fn weight(&self) -> usize {
        self.contacts.iter().map(|(_, k)| k).sum()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PairRecord {
    pub i: usize,
    pub j: usize,
    pub pattern: Vec<u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Ledger {
    /// `4 * C(n, 2)`.
    pub total: usize,
    pub distinct: usize,
    /// Points on exactly two conics meeting transversally.
    pub simple: usize,
    /// Points on exactly two conics with contact order 2.
    pub tacnode: usize,
    /// Points on exactly four conics, pairwise transversal.
    pub quadruple: usize,
    /// Two-conic points with contact order above 2, keyed by order.
    pub higher_tangency: BTreeMap<usize, usize>,
    /// Any other configuration, keyed by the number of incident conics.
    pub other: BTreeMap<usize, usize>,
    /// Sum over distinct points of the pair multiplicities there.
    pub weighted: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CensusStatus {
    Conclusive,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct ConicCensus {
    pub pairs: Vec<PairRecord>,
    pub special_points: Vec<SpecialPoint>,
    pub ledger: Ledger,
    pub status: CensusStatus,
    /// Common projected roots of triples left unresolved.
    pub unresolved: usize,
}

impl ConicCensus {
    /// The identity `total = weighted`, with `weighted` summed per distinct point.
    pub fn bezout_holds(&self) -> bool {
        self.ledger.total == self.ledger.weighted
    }
}

fn verify_claim(conics: &[Conic], curves: &[PlaneCurve], claim: &ClaimedPoint) -> Result<SpecialPoint> {
    let on: Vec<usize> = conics.iter().enumerate().filter(|(_, q)| q.contains(&claim.point)).map(|(k, _)| k).collect();
    let mut want = claim.conics.clone();
    want.sort_unstable();
    if on != want {
        return Err(Error::CertificateFailure(format!("incidence at {}: expected {:?}, found {:?}", claim.point, want, on)));
    }
    let mut contacts = Vec::new();
    for (a, &i) in on.iter().enumerate() {
        for &j in &on[a + 1..] {
            let rep = contact_order(&curves[i], &conics[j].to_poly(), &claim.point, DEFAULT_CAP)?;
            contacts.push(((i, j), rep.order));
        }
    }
    Ok(SpecialPoint { point: claim.point.clone(), conics: on, contacts })
}

/// Census of an arrangement of smooth conics with a list of claimed special
/// points (every point on three or more conics, and every tangency point to
/// be located).
pub fn conic_census(conics: &[Conic], claimed: &[ClaimedPoint], root_tower: &TowerRef) -> Result<ConicCensus> {
    let n = conics.len();
    for q in conics {
        if q.rank() != 3 {
            return Err(Error::DegenerateInput(format!("conic {q} is singular")));
        }
    }
    let curves: Vec<PlaneCurve> = conics.iter().map(|q| PlaneCurve::new(q.to_poly())).collect::<Result<_>>()?;

    let special: Vec<SpecialPoint> =
        par::map(claimed, |c| verify_claim(conics, &curves, c)).into_iter().collect::<Result<_>>()?;
    let mut seen = HashMap::new();
    for (k, s) in special.iter().enumerate() {
        if seen.insert(s.point.clone(), k).is_some() {
            return Err(Error::DegenerateInput(format!("point {} claimed twice", s.point)));
        }
    }

    let pairs = par::pairs(n);
    let polys: Vec<MultiPoly> = conics.iter().map(Conic::to_poly).collect();
    let refs: Vec<&MultiPoly> = polys.iter().collect();
    let ch1 = CoordChange::seeded_for(SEEDS.0, &refs);
    let ch2 = CoordChange::seeded_for(SEEDS.1, &refs);
    let forms: Vec<(BinaryForm, Vec<u32>)> = par::map(&pairs, |&(i, j)| -> Result<(BinaryForm, Vec<u32>)> {
        let a = pair_form(&conics[i], &conics[j], &ch1)?;
        let b = pair_form(&conics[i], &conics[j], &ch2)?;
        if a.pattern() != b.pattern() {
            return Err(Error::ProjectionCollision);
        }
        let p = a.pattern();
        Ok((a, p))
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(k, &p)| (p, k)).collect();

    let triples = par::triples(n);
    let certs: Vec<TripleCertificate> = par::map(&triples, |&(i, j, k)| {
        triple_from_forms(
            &conics[i],
            &conics[j],
            &conics[k],
            &forms[index[&(i, j)]].0,
            &forms[index[&(i, k)]].0,
            &ch1,
            root_tower,
        )
    })
    .into_iter()
    .collect::<Result<_>>()?;
    let mut unresolved = 0;
    for ((i, j, k), c) in triples.iter().zip(&certs) {
        unresolved += c.unresolved;
        for p in &c.points {
            match seen.get(p) {
                Some(&s) if [i, j, k].iter().all(|x| special[s].conics.contains(x)) => {}
                _ => return Err(Error::UnexplainedCoincidence(format!("{p} on conics {i}, {j}, {k}"))),
            }
        }
    }

    // remove the contributions of special points from each pair's pattern
    let mut remaining: Vec<Vec<u32>> = forms.iter().map(|(_, p)| p.clone()).collect();
    for s in &special {
        for &((i, j), k) in &s.contacts {
            let r = &mut remaining[index[&(i, j)]];
            match r.iter().position(|&m| m as usize == k) {
                Some(pos) => {
                    r.remove(pos);
                }
                None => {
                    return Err(Error::CertificateFailure(format!(
                        "contact {k} of conics {i}, {j} at {} missing from pattern {:?}",
                        s.point,
                        forms[index[&(i, j)]].1
                    )))
                }
            }
        }
    }

    let mut ledger = Ledger { total: 4 * n * n.saturating_sub(1) / 2, ..Ledger::default() };
    for s in &special {
        ledger.weighted += s.weight();
        match (s.conics.len(), s.contacts.iter().map(|(_, k)| *k).max().unwrap_or(0)) {
            (2, 1) => ledger.simple += 1,
            (2, 2) => ledger.tacnode += 1,
            (2, k) => *ledger.higher_tangency.entry(k).or_default() += 1,
            (4, 1) => ledger.quadruple += 1,
            (m, _) => *ledger.other.entry(m).or_default() += 1,
        }
    }
    for r in &remaining {
        for &m in r {
            ledger.weighted += m as usize;
            match m {
                1 => ledger.simple += 1,
                2 => ledger.tacnode += 1,
                k => *ledger.higher_tangency.entry(k as usize).or_default() += 1,
            }
        }
    }
    ledger.distinct = special.len() + remaining.iter().map(Vec::len).sum::<usize>();
    let records = pairs.iter().zip(forms).map(|(&(i, j), (_, pattern))| PairRecord { i, j, pattern }).collect();
    let status = if unresolved == 0 { CensusStatus::Conclusive } else { CensusStatus::Inconclusive };
    Ok(ConicCensus { pairs: records, special_points: special, ledger, status, unresolved })
}

/// Certificate that a point set is the transversal intersection of an octic
/// with the coordinate triangle `xyz = 0`.
#[derive(Debug, Clone, Serialize)]
pub struct OcticCertificate {
    pub on_octic: Vec<bool>,
    pub on_triangle: Vec<bool>,
    /// Points on each of `x = 0`, `y = 0`, `z = 0`.
    pub per_line: [usize; 3],
    /// Whether the octic restricted to each coordinate line is square-free of degree 8.
    pub squarefree_lines: [bool; 3],
    pub count_matches: bool,
    pub certified: bool,
}

pub fn octic_membership(points: &[ProjPoint], octic: &MultiPoly) -> Result<OcticCertificate> {
    let t = octic.tower().clone();
    let triangle = crate::poly::xyz(&t);
    let triangle = &(&triangle.0 * &triangle.1) * &triangle.2;
    let mut on_octic = Vec::with_capacity(points.len());
    let mut on_triangle = Vec::with_capacity(points.len());
    let mut per_line = [0usize; 3];
    for p in points {
        on_octic.push(octic.eval(p.coords())?.is_zero());
        on_triangle.push(triangle.eval(p.coords())?.is_zero());
        for v in Var::ALL {
            if p.coords()[v.index()].is_zero() {
                per_line[v.index()] += 1;
            }
        }
    }
    let mut squarefree_lines = [false; 3];
    for v in Var::ALL {
        let mut c = [crate::field::FieldElement::zero(&t), crate::field::FieldElement::zero(&t), crate::field::FieldElement::zero(&t)];
        c[v.index()] = crate::field::FieldElement::one(&t);
        let r = restrict_to_line(octic, &ProjLine::new(c)?)?;
        let sf = r.poly.squarefree();
        squarefree_lines[v.index()] =
            !r.poly.is_zero() && r.order_at_infinity() <= 1 && sf.iter().all(|(_, m)| *m == 1);
    }
    let deg = octic.degree().unwrap_or(0) as usize;
    let distinct = {
        let mut s: Vec<&ProjPoint> = points.iter().collect();
        s.sort();
        s.dedup();
        s.len() == points.len()
    };
    let count_matches = distinct && points.len() == 3 * deg && per_line.iter().all(|&k| k == deg);
    let certified = count_matches
        && on_octic.iter().all(|&b| b)
        && on_triangle.iter().all(|&b| b)
        && squarefree_lines.iter().all(|&b| b);
    Ok(OcticCertificate { on_octic, on_triangle, per_line, squarefree_lines, count_matches, certified })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FieldElement, Tower, TowerBuilder};
    use crate::poly::xyz;

    fn conic(t: &TowerRef, c: [i64; 6]) -> Conic {
        Conic::from_coeffs(&c.map(|v| FieldElement::from_int(t, v))).unwrap()
    }

    #[test]
    fn concentric_circles() {
        let q = Tower::rationals();
        let a = conic(&q, [1, 0, 0, 1, 0, -1]);
        let b = conic(&q, [1, 0, 0, 1, 0, -4]);
        assert_eq!(conic_pair_pattern(&a, &b, SEEDS).unwrap(), vec![2, 2]);
        assert_eq!(conic_pair_pattern(&a, &a, SEEDS).unwrap_err(), Error::CommonComponent);
        let g = TowerBuilder::new().adjoin_int("i", -1).unwrap().build();
        let pts = conic_pair_points(&a, &b, &g).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(pts.iter().all(|(_, m)| *m == 2));
    }

    #[test]
    fn pencil_through_four_points() {
        let q = Tower::rationals();
        let pts: Vec<ProjPoint> =
            [[1, 1, 1], [1, -1, 1], [-1, 1, 1], [-1, -1, 1]].into_iter().map(|c| ProjPoint::from_ints(&q, c).unwrap()).collect();
        let pencil = [conic(&q, [1, 0, 0, 2, 0, -3]), conic(&q, [2, 0, 0, 1, 0, -3]), conic(&q, [1, 0, 0, 1, 0, -2])];
        let mut cert = triple_coincidence(&pencil[0], &pencil[1], &pencil[2], 1, &q).unwrap();
        cert.points.sort();
        let mut want = pts.clone();
        want.sort();
        assert_eq!(cert.points, want);
        let claimed: Vec<ClaimedPoint> = pts.iter().map(|p| ClaimedPoint { point: p.clone(), conics: vec![0, 1, 2] }).collect();
        let census = conic_census(&pencil, &claimed, &q).unwrap();
        assert_eq!(census.ledger.total, 12);
        assert_eq!(census.ledger.distinct, 4);
        assert_eq!(census.ledger.other.get(&3), Some(&4));
        assert!(census.bezout_holds());
        let err = conic_census(&pencil, &claimed[..3], &q).unwrap_err();
        assert!(matches!(err, Error::UnexplainedCoincidence(_)));
        let mut wrong = claimed.clone();
        wrong[0].conics = vec![0, 1];
        assert!(matches!(conic_census(&pencil, &wrong, &q).unwrap_err(), Error::CertificateFailure(_)));
    }

    #[test]
    fn generic_conics_meet_in_simple_points() {
        let q = Tower::rationals();
        let cs = [conic(&q, [1, 0, 0, 1, 0, -1]), conic(&q, [1, 1, 0, 3, 2, -7]), conic(&q, [2, 0, 1, 1, -1, -5])];
        let census = conic_census(&cs, &[], &q).unwrap();
        assert_eq!(census.ledger.distinct, 12);
        assert_eq!(census.ledger.simple, 12);
        assert_eq!(census.status, CensusStatus::Conclusive);
        assert!(census.bezout_holds());
    }

    #[test]
    fn octic_on_coordinate_triangle() {
        let t = TowerBuilder::new().adjoin_int("i", -1).unwrap().adjoin_int("s3", 3).unwrap().build();
        let (x, y, z) = xyz(&t);
        let (x4, y4, z4) = (x.pow(4), y.pow(4), z.pow(4));
        let o = &(&(&(&x.pow(8) + &y.pow(8)) + &z.pow(8)) + &(&x4 * &y4)) + &(&(&y4 * &z4) + &(&z4 * &x4));
        // w^8 + w^4 + 1 = 0 exactly for the twelfth roots of unity w = zeta^k with 3 not dividing k
        let zeta = (&t.generator("s3").unwrap() + &t.generator("i").unwrap()).scale(&crate::Rational::new(1, 2));
        let one = FieldElement::one(&t);
        let zero = FieldElement::zero(&t);
        let mut pts = Vec::new();
        for k in (1..12u32).filter(|k| k % 3 != 0) {
            let w = zeta.pow(k);
            pts.push(ProjPoint::new([one.clone(), w.clone(), zero.clone()]).unwrap());
            pts.push(ProjPoint::new([zero.clone(), one.clone(), w.clone()]).unwrap());
            pts.push(ProjPoint::new([w, zero.clone(), one.clone()]).unwrap());
        }
        let cert = octic_membership(&pts, &o).unwrap();
        assert!(cert.certified, "{cert:?}");
        assert_eq!(cert.per_line, [8, 8, 8]);
        let off = ProjPoint::new([one.clone(), one.clone(), one]).unwrap();
        let cert = octic_membership(&[off], &o).unwrap();
        assert_eq!(cert.on_octic, vec![false]);
        assert!(!cert.certified);
    }
}
