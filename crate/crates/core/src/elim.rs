//! Seeded linear coordinate changes, binary forms from resultants, and
//! lifting projected roots back to intersection points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{FieldElement, TowerRef};
use crate::geometry::ProjPoint;
use crate::linalg::Matrix;
use crate::poly::{resultant, MultiPoly, UniPoly, Var};

/// An invertible integer matrix `M` acting by `p -> p(M v)`; points map by
/// `P -> M^{-1} P` into the new coordinates.
#[derive(Debug, Clone)]
pub struct CoordChange {
    pub seed: u64,
    m: [[i64; 3]; 3],
}

impl CoordChange {
    /// Deterministic pseudo-random matrix with small entries and nonzero determinant.
    pub fn seeded(seed: u64) -> Self {
        Self::seeded_for(seed, &[])
    }

    /// The first matrix in the stream of `seed` under which every form in
    /// `forms` keeps its full degree in `z`.
    pub fn seeded_for(seed: u64, forms: &[&MultiPoly]) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        loop {
            let mut m = [[0i64; 3]; 3];
            for row in m.iter_mut() {
                for x in row.iter_mut() {
                    *x = rng.gen_range(-32..=32);
                }
            }
            if det_i64(&m) == 0 {
                continue;
            }
            let change = CoordChange { seed, m };
            if forms.iter().all(|f| {
                let g = change.apply_poly(f);
                g.degree_in(Var::Z) == g.degree().unwrap_or(0)
            }) {
                return change;
            }
        }
    }

    pub fn identity() -> Self {
        CoordChange { seed: 0, m: [[1, 0, 0], [0, 1, 0], [0, 0, 1]] }
    }

    /// Projection from the point `(a : b : 1)`: `p -> p(x + a z, y + b z, z)`.
    pub fn centered(a: i64, b: i64) -> Self {
        CoordChange { seed: 0, m: [[1, 0, a], [0, 1, b], [0, 0, 1]] }
    }

    pub fn entries(&self) -> [[i64; 3]; 3] {
        self.m
    }

    fn matrix(&self, t: &TowerRef) -> [[FieldElement; 3]; 3] {
        self.m.map(|row| row.map(|v| FieldElement::from_int(t, v)))
    }

    pub fn apply_poly(&self, p: &MultiPoly) -> MultiPoly {
        p.linear_substitute(&self.matrix(p.tower()))
    }

    /// Coordinates of `p` in the new system.
    pub fn to_new(&self, p: &[FieldElement; 3]) -> Result<[FieldElement; 3]> {
        let t = p[0].tower().clone();
        let m = Matrix::from_rows(self.matrix(&t).iter().map(|r| r.to_vec()).collect());
        let d = m.det(&t);
        // adjugate solve
        let cols: Vec<[FieldElement; 3]> = (0..3).map(|c| [m.get(0, c).clone(), m.get(1, c).clone(), m.get(2, c).clone()]).collect();
        let solve = |k: usize| {
            let mut cs = cols.clone();
            cs[k] = p.clone();
            &crate::geometry::det3(&cs[0], &cs[1], &cs[2]) / &d
        };
        Ok([solve(0), solve(1), solve(2)])
    }

    /// Coordinates in the old system of a point given in the new one.
    pub fn to_old(&self, p: &[FieldElement; 3]) -> [FieldElement; 3] {
        let t = p[0].tower().clone();
        let m = self.matrix(&t);
        [0, 1, 2].map(|r| (0..3).fold(FieldElement::zero(&t), |acc, c| &acc + &(&m[r][c] * &p[c])))
    }
}

fn det_i64(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// A binary form `h(x, y)` of known degree, stored as `h(s, 1)`.
#[derive(Debug, Clone)]
pub struct BinaryForm {
    pub affine: UniPoly,
    pub degree: usize,
}

/// Root of a binary form: `Some(s)` for `(s : 1)`, `None` for `(1 : 0)`.
pub type FormRoot = Option<FieldElement>;

impl BinaryForm {
    pub fn from_poly(r: &MultiPoly) -> Self {
        let d = r.degree().unwrap_or(0) as usize;
        let t = r.tower().clone();
        let mut coeffs = vec![FieldElement::zero(&t); d + 1];
        for (e, c) in r.terms() {
            coeffs[e[0] as usize] = c.clone();
        }
        BinaryForm { affine: UniPoly::new(&t, coeffs), degree: d }
    }

    pub fn is_zero(&self) -> bool {
        self.affine.is_zero()
    }

    pub fn order_at_infinity(&self) -> usize {
        self.degree - self.affine.degree().unwrap_or(0)
    }

    /// Square-free decomposition as `(factor, multiplicity)`; the point at
    /// infinity appears as a factor `None`.
    pub fn squarefree(&self) -> Vec<(Option<UniPoly>, u32)> {
        let mut out: Vec<(Option<UniPoly>, u32)> = self.affine.squarefree().into_iter().map(|(f, m)| (Some(f), m)).collect();
        let inf = self.order_at_infinity();
        if inf > 0 {
            out.push((None, inf as u32));
        }
        out
    }

    /// Multiset of root multiplicities, each factor counted by its degree,
    /// sorted in decreasing order.
    pub fn pattern(&self) -> Vec<u32> {
        let mut v = Vec::new();
        for (f, m) in self.squarefree() {
            let d = f.map_or(1, |f| f.degree().unwrap_or(0));
            v.extend(std::iter::repeat(m).take(d));
        }
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// The square-free part, as a binary form.
    pub fn squarefree_part(&self) -> BinaryForm {
        let t = self.affine.tower().clone();
        let mut p = UniPoly::constant(FieldElement::one(&t));
        let mut deg = 0;
        for (f, _) in self.squarefree() {
            match f {
                Some(f) => {
                    deg += f.degree().unwrap_or(0);
                    p = &p * &f;
                }
                None => deg += 1,
            }
        }
        BinaryForm { affine: p, degree: deg }
    }

    /// Whether `self` divides `other` as binary forms.
    pub fn divides(&self, other: &BinaryForm) -> bool {
        if other.is_zero() {
            return true;
        }
        if self.order_at_infinity() > other.order_at_infinity() {
            return false;
        }
        let (a, b) = unify_uni(&self.affine, &other.affine);
        b.divrem(&a).1.is_zero()
    }

    pub fn gcd(&self, other: &BinaryForm) -> BinaryForm {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let g = self.affine.gcd(&other.affine);
        let inf = self.order_at_infinity().min(other.order_at_infinity());
        let degree = g.degree().unwrap_or(0) + inf;
        BinaryForm { affine: g, degree }
    }

    /// Roots in `root_tower` with multiplicities, or `FieldTooSmall` naming the pattern.
    pub fn roots_in(&self, root_tower: &TowerRef) -> Result<Vec<(FormRoot, u32)>> {
        let mut out = Vec::new();
        if !self.affine.is_zero() {
            let lifted = self.affine.lift_to(root_tower)?;
            for r in lifted.roots().map_err(|e| match e {
                Error::FieldTooSmall(_) => Error::FieldTooSmall(format!("pattern {:?}", self.pattern())),
                other => other,
            })? {
                out.push((Some(r.value), r.multiplicity));
            }
        }
        let inf = self.order_at_infinity();
        if inf > 0 {
            out.push((None, inf as u32));
        }
        Ok(out)
    }
}

fn unify_uni(a: &UniPoly, b: &UniPoly) -> (UniPoly, UniPoly) {
    if a.tower() == b.tower() {
        (a.clone(), b.clone())
    } else if let Ok(la) = a.lift_to(b.tower()) {
        (la, b.clone())
    } else {
        (a.clone(), b.lift_to(a.tower()).expect("incompatible towers"))
    }
}

/// `Res_z(f, g)` of two homogeneous forms with full degree in `z`.
pub fn res_z(f: &MultiPoly, g: &MultiPoly) -> Result<BinaryForm> {
    for p in [f, g] {
        if !p.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        if p.degree_in(Var::Z) != p.degree().unwrap_or(0) {
            return Err(Error::DegenerateInput("form is not monic in z; change coordinates".into()));
        }
    }
    Ok(BinaryForm::from_poly(&resultant(f, g, Var::Z)?))
}

/// Points of `V(f, g)` above a projected root, in the coordinates of `f, g`.
pub fn fiber_points(f: &MultiPoly, g: &MultiPoly, root: &FormRoot, root_tower: &TowerRef) -> Result<Vec<[FieldElement; 3]>> {
    let t = root_tower.clone();
    let (x, y) = match root {
        Some(s) => (s.lift_to(&t)?, FieldElement::one(&t)),
        None => (FieldElement::one(&t), FieldElement::zero(&t)),
    };
    let restrict = |p: &MultiPoly| -> Result<UniPoly> {
        let p = p.lift_to(&t)?;
        p.restrict_param(&[FieldElement::zero(&t), FieldElement::zero(&t), FieldElement::one(&t)], &[x.clone(), y.clone(), FieldElement::zero(&t)])
    };
    let uf = restrict(f)?;
    let ug = restrict(g)?;
    let h = uf.gcd(&ug);
    if h.degree().unwrap_or(0) == 0 {
        return Ok(Vec::new());
    }
    let roots = h.roots().map_err(|_| Error::FieldTooSmall("fiber coordinate outside the tower".into()))?;
    Ok(roots.into_iter().map(|r| [x.clone(), y.clone(), r.value]).collect())
}

/// Intersection points of two curves with their resultant multiplicities,
/// computed in changed coordinates and mapped back.
pub fn intersection_points(
    f: &MultiPoly,
    g: &MultiPoly,
    change: &CoordChange,
    root_tower: &TowerRef,
) -> Result<Vec<(ProjPoint, u32)>> {
    let fc = change.apply_poly(f);
    let gc = change.apply_poly(g);
    let form = res_z(&fc, &gc)?;
    if form.is_zero() {
        return Err(Error::CommonComponent);
    }
    let mut out = Vec::new();
    for (root, m) in form.roots_in(root_tower)? {
        let pts = fiber_points(&fc, &gc, &root, root_tower)?;
        if pts.len() != 1 {
            return Err(Error::ProjectionCollision);
        }
        out.push((ProjPoint::new(change.to_old(&pts[0]))?, m));
    }
    Ok(out)
}

/// Changes tried by [`locate_intersections`]: projections from small
/// integer centres first (their projected roots have small heights), then
/// seeded generic changes.
pub fn candidate_changes() -> Vec<CoordChange> {
    let mut out: Vec<CoordChange> = [(1, 1), (1, 2), (2, 1), (1, 3), (3, 2), (2, 5)]
        .into_iter()
        .map(|(a, b)| CoordChange::centered(a, b))
        .collect();
    out.extend([1, 2, 3].map(CoordChange::seeded));
    out
}

/// Intersection points of two coprime curves with their local
/// multiplicities read off the projection, using the first change from
/// [`candidate_changes`] that separates the points and whose roots lie in
/// `root_tower`.
pub fn locate_intersections(f: &MultiPoly, g: &MultiPoly, root_tower: &TowerRef) -> Result<(Vec<(ProjPoint, u32)>, CoordChange)> {
    let mut last = Error::ProjectionCollision;
    for change in candidate_changes() {
        let (fc, gc) = (change.apply_poly(f), change.apply_poly(g));
        let full = |p: &MultiPoly| p.degree_in(Var::Z) == p.degree().unwrap_or(0);
        if !full(&fc) || !full(&gc) {
            continue;
        }
        match intersection_points(f, g, &change, root_tower) {
            Ok(pts) => return Ok((pts, change)),
            Err(e @ (Error::FieldTooSmall(_) | Error::ProjectionCollision)) => last = e,
            Err(e) => return Err(e),
        }
    }
    Err(last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{Tower, TowerBuilder};
    use crate::poly::xyz;

    #[test]
    fn change_roundtrip() {
        let q = Tower::rationals();
        let ch = CoordChange::seeded(1);
        let p = [FieldElement::from_int(&q, 2), FieldElement::from_int(&q, -1), FieldElement::from_int(&q, 5)];
        assert_eq!(ch.to_old(&ch.to_new(&p).unwrap()), p);
        let (x, y, z) = xyz(&q);
        let f = &(&x.pow(2) + &(&y * &z)) - &z.pow(2);
        assert_eq!(ch.apply_poly(&f).eval(&ch.to_new(&p).unwrap()).unwrap(), f.eval(&p).unwrap());
    }

    #[test]
    fn circles_meet_at_circular_points_twice() {
        let q = Tower::rationals();
        let (x, y, z) = xyz(&q);
        let c1 = &(&x.pow(2) + &y.pow(2)) - &z.pow(2);
        let c2 = &(&x.pow(2) + &y.pow(2)) - &z.pow(2).scale(&FieldElement::from_int(&q, 4));
        for seed in [1, 2] {
            let ch = CoordChange::seeded(seed);
            let form = res_z(&ch.apply_poly(&c1), &ch.apply_poly(&c2)).unwrap();
            assert_eq!(form.pattern(), vec![2, 2]);
        }
        let g = TowerBuilder::new().adjoin_int("i", -1).unwrap().build();
        let pts = intersection_points(&c1, &c2, &CoordChange::seeded(1), &g).unwrap();
        let i = g.generator("i").unwrap();
        let one = FieldElement::one(&g);
        let zero = FieldElement::zero(&g);
        let mut got: Vec<ProjPoint> = pts.iter().map(|(p, m)| {
            assert_eq!(*m, 2);
            p.clone()
        }).collect();
        got.sort();
        let mut want = vec![
            ProjPoint::new([one.clone(), i.clone(), zero.clone()]).unwrap(),
            ProjPoint::new([one, -&i, zero]).unwrap(),
        ];
        want.sort();
        assert_eq!(got, want);
    }
}
