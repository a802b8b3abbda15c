//! Acceptance suite: one pass/fail line per criterion. Runs without the
//! libtest harness so the lines are always printed.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use quartica::atlas::{self, atlas};
use quartica::report::{CheckReport, CheckStatus, Report};
use quartica::reproduce::{reproduce, Group};
use quartica::towers;
use quartica_core::census::conic_census;
use quartica_core::contact::{branch_series, PlaneCurve};
use quartica_core::geometry::{
    cross_ratio, cross_ratio_in_chart, dual_line, dual_point, join, line_census, ProjLine, ProjPoint,
};
use quartica_core::poly::{monomials_of_degree, uni_resultant, MultiPoly};
use quartica_core::{Error, FieldElement, Rational, TowerRef};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Verdict = Result<(), String>;

const TOL: f64 = 1e-9;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Verdict {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

struct Checks<'a>(HashMap<&'a str, &'a CheckReport>);

impl<'a> Checks<'a> {
    fn new(report: &'a Report) -> Self {
        Checks(report.checks.iter().map(|c| (c.id.as_str(), c)).collect())
    }

    fn get(&self, id: &str) -> Result<&'a CheckReport, String> {
        self.0.get(id).copied().ok_or_else(|| format!("check {id} missing from report"))
    }

    fn passed(&self, ids: &[&str]) -> Verdict {
        for id in ids {
            let c = self.get(id)?;
            ensure(c.status == CheckStatus::Pass, || format!("{id}: {:?}, computed {}", c.status, c.computed))?;
        }
        Ok(())
    }

    fn ids(&self) -> Vec<&'a str> {
        let mut ids: Vec<&str> = self.0.keys().copied().collect();
        ids.sort();
        ids
    }
}

// ---- numeric oracles ----------------------------------------------------

fn normalize(v: [Complex64; 3]) -> [Complex64; 3] {
    let k = (0..3).max_by(|&a, &b| v[a].norm().total_cmp(&v[b].norm())).unwrap();
    let s = v[k];
    [v[0] / s, v[1] / s, v[2] / s]
}

fn cross(a: [Complex64; 3], b: [Complex64; 3]) -> [Complex64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

fn close(a: &[Complex64; 3], b: &[Complex64; 3]) -> bool {
    (0..3).all(|k| (a[k] - b[k]).norm() < 1e-7)
}

fn incident(l: &[Complex64; 3], p: &[Complex64; 3]) -> bool {
    let l = normalize(*l);
    let p = normalize(*p);
    (l[0] * p[0] + l[1] * p[1] + l[2] * p[2]).norm() < TOL
}

/// t-vector of a line arrangement from floating-point intersections in the
/// complex embedding, with the numerically distinct points.
fn numeric_census(lines: &[ProjLine]) -> (Vec<usize>, Vec<[Complex64; 3]>) {
    let emb: Vec<[Complex64; 3]> = lines.iter().map(|l| normalize(l.embed())).collect();
    let mut pts: Vec<[Complex64; 3]> = Vec::new();
    for i in 0..emb.len() {
        for j in i + 1..emb.len() {
            let p = normalize(cross(emb[i], emb[j]));
            if !pts.iter().any(|q| close(q, &p)) {
                pts.push(p);
            }
        }
    }
    let mut t = Vec::new();
    for p in &pts {
        let m = emb.iter().filter(|l| incident(l, p)).count();
        if t.len() < m - 1 {
            t.resize(m - 1, 0);
        }
        t[m - 2] += 1;
    }
    (t, pts)
}

fn eval_numeric(p: &MultiPoly, z: &[Complex64; 3]) -> Complex64 {
    p.terms()
        .map(|(e, c)| c.embed() * z[0].powu(e[0]) * z[1].powu(e[1]) * z[2].powu(e[2]))
        .sum()
}

fn numeric_rank(m: DMatrix<Complex64>) -> usize {
    let sv = m.singular_values();
    let top = sv.iter().cloned().fold(0.0, f64::max);
    sv.iter().filter(|&&s| s > top * 1e-8).count()
}

/// Hilbert function from the numeric rank of the evaluation matrix of
/// normalized embedded points.
fn numeric_hilbert(points: &[ProjPoint], t: u32) -> usize {
    let pts: Vec<[Complex64; 3]> = points.iter().map(|p| normalize(p.embed())).collect();
    let monos = monomials_of_degree(t);
    let m = DMatrix::from_fn(pts.len(), monos.len(), |r, c| {
        let e = monos[c];
        pts[r][0].powu(e[0]) * pts[r][1].powu(e[1]) * pts[r][2].powu(e[2])
    });
    numeric_rank(m)
}

fn atlas_lines(id: &str) -> &'static [ProjLine] {
    atlas().expect("atlas").get(id).expect("id").lines()
}

fn atlas_points(id: &str) -> &'static [ProjPoint] {
    atlas().expect("atlas").get(id).expect("id").points()
}

fn numeric_t(id: &str, want: &[usize]) -> Verdict {
    let (t, _) = numeric_census(atlas_lines(id));
    ensure(t == want, || format!("numeric census of {id} gives {t:?}"))
}

// ---- criteria -----------------------------------------------------------

fn criterion_1(c: &Checks) -> Verdict {
    c.passed(&["fermat.mtl.tvector"])?;
    numeric_t(atlas::FERMAT_MTL, &[48, 0, 3])?;
    let (_, pts) = numeric_census(atlas_lines(atlas::FERMAT_MTL));
    let emb: Vec<[Complex64; 3]> = atlas_lines(atlas::FERMAT_MTL).iter().map(|l| l.embed()).collect();
    let quadruple: Vec<_> = pts.iter().filter(|p| emb.iter().filter(|l| incident(l, p)).count() == 4).collect();
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let axes = [[one, zero, zero], [zero, one, zero], [zero, zero, one]];
    ensure(quadruple.len() == 3 && axes.iter().all(|a| quadruple.iter().any(|q| close(q, a))), || {
        "quadruple points are not the coordinate points".into()
    })
}

fn criterion_2(c: &Checks) -> Verdict {
    c.passed(&["fermat.mtl.contact", "fermat.mtp.tangency", "kk.mtl.verify"])
}

fn criterion_3(c: &Checks) -> Verdict {
    c.passed(&["fermat.mtp.harmonic"])?;
    let pf = atlas_points(atlas::FERMAT_MTP);
    for v in 0..3 {
        let on: Vec<[Complex64; 3]> = pf.iter().filter(|p| p.coords()[v].is_zero()).map(|p| p.embed()).collect();
        ensure(on.len() == 4, || format!("axis {v} carries {} MTPs", on.len()))?;
        let (a, b) = ((v + 1) % 3, (v + 2) % 3);
        let affine: Vec<Complex64> =
            on.iter().map(|p| if p[b].norm() > TOL { p[a] / p[b] } else { Complex64::new(f64::INFINITY, 0.0) }).collect();
        let cr = |x: Complex64, y: Complex64, z: Complex64, w: Complex64| ((z - x) * (w - y)) / ((z - y) * (w - x));
        let harmonic = [(0, 1, 2, 3), (0, 2, 1, 3), (0, 3, 1, 2)].iter().any(|&(i, j, k, l)| {
            (cr(affine[i], affine[j], affine[k], affine[l]) + 1.0).norm() < 1e-9
        });
        ensure(harmonic, || format!("numeric cross-ratios on axis {v} are not harmonic"))?;
    }
    Ok(())
}

fn criterion_4(c: &Checks) -> Verdict {
    c.passed(&["fermat.mtp.lines"])?;
    numeric_t(atlas::FERMAT_MTP_LINES, &[66])
}

fn criterion_5(c: &Checks) -> Verdict {
    c.passed(&["kk.mtl.tvector"])?;
    numeric_t(atlas::KK_MTL, &[66])
}

fn criterion_6(c: &Checks) -> Verdict {
    c.passed(&["kk.dual.tvector", "kk.dual.ci", "kk.dual.fermat_lines"])?;
    numeric_t(atlas::KK_MTP_DUAL, &[30, 0, 6])
}

fn criterion_7(c: &Checks) -> Verdict {
    c.passed(&["fermat.mtp.ci", "fermat.sextactic.ci"])
}

fn criterion_8(c: &Checks) -> Verdict {
    c.passed(&["fermat.doubles.hilbert", "fermat.doubles.generators", "kk.doubles.hilbert", "kk.dual.hilbert"])?;
    let cases = [
        ("fermat.doubles.hilbert", atlas::FERMAT_MTL),
        ("kk.doubles.hilbert", atlas::KK_MTL),
        ("kk.dual.hilbert", atlas::KK_MTP_DUAL),
    ];
    for (check, lines) in cases {
        let exact: Vec<usize> = c.get(check)?.computed["hilbert"]
            .as_array()
            .ok_or("hilbert table missing")?
            .iter()
            .map(|v| v.as_u64().unwrap_or(u64::MAX) as usize)
            .collect();
        let doubles = line_census(atlas_lines(lines)).map_err(|e| e.to_string())?.pn(2);
        let numeric: Vec<usize> = (0..exact.len() as u32).map(|t| numeric_hilbert(&doubles, t)).collect();
        ensure(numeric == exact, || format!("{check}: numeric rank oracle {numeric:?} vs exact {exact:?}"))?;
    }
    Ok(())
}

fn criterion_9(c: &Checks) -> Verdict {
    c.passed(&[
        "fermat.sextactic.proper",
        "fermat.sextactic.improper",
        "fermat.h2.data",
        "fermat.h2.total",
        "kk.sextactic.proper",
        "kk.h2.data",
        "kk.sextic.resultant",
        "kk.sextic.containment",
    ])?;
    let a = atlas().map_err(|e| e.to_string())?;
    let h2 = a.get(atlas::FERMAT_H2).map_err(|e| e.to_string())?.poly();
    let mut pts = atlas_points(atlas::FERMAT_SEXTACTIC).to_vec();
    pts.extend_from_slice(atlas_points(atlas::FERMAT_MTP));
    let scale = h2.terms().map(|(_, c)| c.embed().norm()).fold(0.0, f64::max);
    for p in &pts {
        let v = eval_numeric(&h2, &normalize(p.embed()));
        ensure(v.norm() < 1e-8 * scale, || format!("H2(F) is numerically {v} at {p}"))?;
    }
    Ok(())
}

fn criterion_10(c: &Checks) -> Verdict {
    c.passed(&["fermat.conics.search", "kk.conics.axes.search", "kk.conics.diagonals.search"])
}

fn criterion_11(c: &Checks) -> Verdict {
    c.passed(&["fermat.conics.census", "fermat.conics.tacnodes", "fermat.conics.quadruple"])?;
    let census = &c.get("fermat.conics.census")?.computed;
    let total = census["total"].as_u64().unwrap_or(0) as usize;
    ensure(total == 4 * 24 * 23 / 2, || format!("ledger total {total}"))?;
    let simple = census["simple"].as_u64().unwrap_or(0) as usize;
    ensure(simple + 2 * 24 + 6 * 24 == total, || "ledger does not add up to 4 C(24,2)".into())?;
    let conics: Vec<MultiPoly> =
        atlas().map_err(|e| e.to_string())?.get(atlas::FERMAT_CONICS).map_err(|e| e.to_string())?.conics().iter().map(|q| q.to_poly()).collect();
    for (id, want) in [(atlas::FERMAT_TACNODES, 2), (atlas::FERMAT_QUADRUPLE, 4)] {
        for p in atlas_points(id) {
            let z = normalize(p.embed());
            let on = conics.iter().filter(|q| eval_numeric(q, &z).norm() < 1e-8).count();
            ensure(on == want, || format!("{p} lies numerically on {on} conics, expected {want}"))?;
        }
    }
    Ok(())
}

fn criterion_12(c: &Checks) -> Verdict {
    c.passed(&["kk.conics.diagonals.census", "kk.conics.axes.tangency"])?;
    let d = c.get("kk.conics.axes.doubles")?;
    ensure(d.status == CheckStatus::Derived, || format!("kk.conics.axes.doubles: {:?}", d.status))?;
    let total = d.computed["total"].as_u64().unwrap_or(0) as usize;
    let simple = d.computed["ordinary_double_points"].as_u64().unwrap_or(0) as usize;
    let contacts = c.get("kk.conics.axes.tangency")?.computed["contacts_at_listed_points"].clone();
    let tangency_weight: usize = contacts
        .as_array()
        .ok_or("contacts missing")?
        .iter()
        .flat_map(|v| v.as_array().cloned().unwrap_or_default())
        .map(|k| k.as_u64().unwrap_or(0) as usize)
        .sum();
    ensure(total == 4 * 12 * 11 / 2 && simple + tangency_weight == total, || {
        format!("derived ledger: total {total}, doubles {simple}, tangency weight {tangency_weight}")
    })?;
    let conics = atlas().map_err(|e| e.to_string())?.get(atlas::KK_CONICS_DIAGONALS).map_err(|e| e.to_string())?.conics();
    let polys: Vec<MultiPoly> = conics.iter().map(|q| q.to_poly()).collect();
    let mut pts: Vec<[Complex64; 3]> = Vec::new();
    for i in 0..polys.len() {
        for j in i + 1..polys.len() {
            let mut pair: Vec<[Complex64; 3]> = Vec::new();
            for p in numeric_conic_meet(&polys[i], &polys[j]) {
                if !pair.iter().any(|q| close(q, &p)) {
                    pair.push(p);
                }
            }
            ensure(pair.len() == 4, || format!("conics {i} and {j} meet numerically in {} points", pair.len()))?;
            for p in pair {
                if !pts.iter().any(|q| close(q, &p)) {
                    pts.push(p);
                }
            }
        }
    }
    ensure(pts.len() == 60, || format!("numeric oracle finds {} points on the 6-conic family", pts.len()))
}

/// Intersection points of two conics by a generic pencil degeneration:
/// each degenerate member splits into two lines, each meeting the first
/// conic in two points.
fn numeric_conic_meet(a: &MultiPoly, b: &MultiPoly) -> Vec<[Complex64; 3]> {
    let ga = gram(a);
    let gb = gram(b);
    let det = |s: Complex64| {
        let m = ga.clone() + gb.clone() * s;
        m.determinant()
    };
    let nodes: Vec<Complex64> = (0..4).map(|k| Complex64::new(k as f64, 0.3 * k as f64 + 0.1)).collect();
    let vals: Vec<Complex64> = nodes.iter().map(|&s| det(s)).collect();
    let v = DMatrix::from_fn(4, 4, |r, c| nodes[r].powu(c as u32));
    let coeffs = v.lu().solve(&nalgebra::DVector::from_vec(vals)).expect("interpolation");
    let roots = cubic_roots([coeffs[0], coeffs[1], coeffs[2], coeffs[3]]);
    let mut out = Vec::new();
    for s in roots {
        let m = ga.clone() + gb.clone() * s;
        let svd = m.clone().svd(true, true);
        let v_t = svd.v_t.expect("v_t");
        let k = (0..3).min_by(|&i, &j| svd.singular_values[i].total_cmp(&svd.singular_values[j])).unwrap();
        let vertex: [Complex64; 3] = [v_t[(k, 0)].conj(), v_t[(k, 1)].conj(), v_t[(k, 2)].conj()];
        let lines = split_degenerate(&m, vertex);
        for l in lines {
            out.extend(line_conic(&ga, l));
        }
    }
    out.into_iter()
        .map(|p| newton(&ga, &gb, normalize(p)))
        .filter(|p| quad(&gb, p).norm() < 1e-10 && quad(&ga, p).norm() < 1e-10)
        .collect()
}

/// Newton iteration on both conics in the affine chart of the largest coordinate.
fn newton(ga: &DMatrix<Complex64>, gb: &DMatrix<Complex64>, mut p: [Complex64; 3]) -> [Complex64; 3] {
    let k = (0..3).max_by(|&a, &b| p[a].norm().total_cmp(&p[b].norm())).unwrap();
    let (u, v) = ((k + 1) % 3, (k + 2) % 3);
    let grad = |g: &DMatrix<Complex64>, p: &[Complex64; 3], i: usize| (0..3).map(|j| 2.0 * g[(i, j)] * p[j]).sum::<Complex64>();
    for _ in 0..20 {
        let (fa, fb) = (quad(ga, &p), quad(gb, &p));
        let (a11, a12, a21, a22) = (grad(ga, &p, u), grad(ga, &p, v), grad(gb, &p, u), grad(gb, &p, v));
        let det = a11 * a22 - a12 * a21;
        if det.norm() < 1e-14 {
            break;
        }
        p[u] -= (a22 * fa - a12 * fb) / det;
        p[v] -= (a11 * fb - a21 * fa) / det;
    }
    normalize(p)
}

fn gram(p: &MultiPoly) -> DMatrix<Complex64> {
    let mut g = DMatrix::from_element(3, 3, Complex64::new(0.0, 0.0));
    for (e, c) in p.terms() {
        let c = c.embed();
        let idx: Vec<usize> = (0..3).flat_map(|v| std::iter::repeat(v).take(e[v] as usize)).collect();
        if idx[0] == idx[1] {
            g[(idx[0], idx[0])] += c;
        } else {
            g[(idx[0], idx[1])] += c / 2.0;
            g[(idx[1], idx[0])] += c / 2.0;
        }
    }
    g
}

fn quad(g: &DMatrix<Complex64>, p: &[Complex64; 3]) -> Complex64 {
    let mut s = Complex64::new(0.0, 0.0);
    for i in 0..3 {
        for j in 0..3 {
            s += g[(i, j)] * p[i] * p[j];
        }
    }
    s
}

fn cubic_roots(c: [Complex64; 4]) -> Vec<Complex64> {
    let n = 3;
    let mut comp = DMatrix::from_element(n, n, Complex64::new(0.0, 0.0));
    for i in 1..n {
        comp[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        comp[(i, n - 1)] = -c[i] / c[3];
    }
    comp.eigenvalues().map(|v| v.iter().cloned().collect()).unwrap_or_else(|| {
        let schur = comp.schur();
        schur.eigenvalues().map(|v| v.iter().cloned().collect()).unwrap_or_default()
    })
}

/// The two lines of a rank-2 conic with the given vertex: restrict to a line
/// avoiding the vertex and join the vertex to the two roots.
fn split_degenerate(m: &DMatrix<Complex64>, vertex: [Complex64; 3]) -> Vec<[Complex64; 3]> {
    let a = [Complex64::new(0.37, 0.11), Complex64::new(-0.52, 0.23), Complex64::new(0.71, -0.05)];
    let b = [Complex64::new(-0.29, 0.64), Complex64::new(0.18, -0.41), Complex64::new(0.33, 0.27)];
    let bil = |p: &[Complex64; 3], q: &[Complex64; 3]| {
        let mut s = Complex64::new(0.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                s += m[(i, j)] * p[i] * q[j];
            }
        }
        s
    };
    let (qa, qab, qb) = (bil(&a, &a), bil(&a, &b), bil(&b, &b));
    let disc = (qab * qab - qa * qb).sqrt();
    [(-qab + disc) / qb, (-qab - disc) / qb]
        .into_iter()
        .map(|t| {
            let p = [a[0] + t * b[0], a[1] + t * b[1], a[2] + t * b[2]];
            cross(vertex, p)
        })
        .collect()
}

fn line_conic(g: &DMatrix<Complex64>, l: [Complex64; 3]) -> Vec<[Complex64; 3]> {
    let k = (0..3).max_by(|&a, &b| l[a].norm().total_cmp(&l[b].norm())).unwrap();
    let (u, v) = ((k + 1) % 3, (k + 2) % 3);
    let point = |s: Complex64, t: Complex64| {
        let mut p = [Complex64::new(0.0, 0.0); 3];
        p[u] = s;
        p[v] = t;
        p[k] = -(l[u] * s + l[v] * t) / l[k];
        p
    };
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let e1 = point(one, zero);
    let e2 = point(zero, one);
    let bil = |p: &[Complex64; 3], q: &[Complex64; 3]| {
        let mut s = zero;
        for i in 0..3 {
            for j in 0..3 {
                s += g[(i, j)] * p[i] * q[j];
            }
        }
        s
    };
    let (a, b, c) = (bil(&e1, &e1), bil(&e1, &e2), bil(&e2, &e2));
    if a.norm() < 1e-12 {
        let mut out = vec![e1];
        if b.norm() > 1e-12 {
            out.push(point(-c, 2.0 * b));
        }
        return out;
    }
    let disc = (b * b - a * c).sqrt();
    [(-b + disc) / a, (-b - disc) / a].into_iter().map(|s| point(s, one)).collect()
}

// ---- criterion 13: property suites --------------------------------------

fn random_element(rng: &mut ChaCha8Rng, t: &TowerRef) -> FieldElement {
    let coords = (0..t.degree())
        .map(|_| if rng.gen_bool(0.3) { Rational::zero() } else { Rational::new(rng.gen_range(-9..=9), rng.gen_range(1..=4)) })
        .collect();
    FieldElement::from_coords(t, coords).expect("coordinate count matches degree")
}

fn random_nonzero(rng: &mut ChaCha8Rng, t: &TowerRef) -> FieldElement {
    loop {
        let a = random_element(rng, t);
        if !a.is_zero() {
            return a;
        }
    }
}

fn random_point(rng: &mut ChaCha8Rng, t: &TowerRef) -> ProjPoint {
    loop {
        let c = [random_element(rng, t), random_element(rng, t), random_element(rng, t)];
        if let Ok(p) = ProjPoint::new(c) {
            return p;
        }
    }
}

fn all_towers() -> Vec<TowerRef> {
    vec![quartica_core::Tower::rationals(), towers::gauss_r2(), towers::fermat(), towers::tacnode(), towers::kk(), towers::universal()]
}

fn field_axioms(rng: &mut ChaCha8Rng) -> Verdict {
    for t in all_towers() {
        let zero = FieldElement::zero(&t);
        let one = FieldElement::one(&t);
        for trial in 0..1000 {
            let (a, b, c) = (random_element(rng, &t), random_element(rng, &t), random_element(rng, &t));
            let fail = |law: &str| format!("{law} fails in {} at trial {trial}: a={a}, b={b}, c={c}", t.spec());
            ensure(&(&a + &b) + &c == &a + &(&b + &c), || fail("additive associativity"))?;
            ensure(&a + &b == &b + &a, || fail("additive commutativity"))?;
            ensure(&(&a * &b) * &c == &a * &(&b * &c), || fail("multiplicative associativity"))?;
            ensure(&a * &b == &b * &a, || fail("multiplicative commutativity"))?;
            ensure(&a * &(&b + &c) == &(&a * &b) + &(&a * &c), || fail("distributivity"))?;
            ensure(&a + &zero == a && &a * &one == a, || fail("identities"))?;
            ensure((&a - &a).is_zero() && (&a + &(-&a)).is_zero(), || fail("additive inverse"))?;
            if !a.is_zero() {
                let inv = a.inv().map_err(|e| fail(&e.to_string()))?;
                ensure((&a * &inv).is_one(), || fail("multiplicative inverse"))?;
            }
        }
    }
    Ok(())
}

fn sqrt_soundness(rng: &mut ChaCha8Rng) -> Verdict {
    for t in all_towers() {
        for trial in 0..300 {
            let a = random_element(rng, &t);
            if let Ok(b) = a.sqrt() {
                ensure(&b * &b == a, || format!("sqrt({a}) = {b} is unsound in {}", t.spec()))?;
            }
            let sq = &a * &a;
            let b = sq.sqrt().map_err(|e| format!("sqrt of the square {sq} in {} failed at trial {trial}: {e}", t.spec()))?;
            ensure(&b * &b == sq, || format!("sqrt({sq}) = {b} is unsound in {}", t.spec()))?;
        }
    }
    Ok(())
}

fn random_uni(rng: &mut ChaCha8Rng, t: &TowerRef) -> Vec<FieldElement> {
    let deg = rng.gen_range(1..=3);
    let mut c: Vec<FieldElement> = (0..deg).map(|_| random_element(rng, t)).collect();
    c.push(random_nonzero(rng, t));
    c
}

fn uni_mul(a: &[FieldElement], b: &[FieldElement], t: &TowerRef) -> Vec<FieldElement> {
    let mut out = vec![FieldElement::zero(t); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] = &out[i + j] + &(x * y);
        }
    }
    out
}

fn resultant_multiplicativity(rng: &mut ChaCha8Rng) -> Verdict {
    let t = towers::gauss_r2();
    for trial in 0..500 {
        let f = random_uni(rng, &t);
        let g = random_uni(rng, &t);
        let h = random_uni(rng, &t);
        let lhs = uni_resultant(&uni_mul(&f, &g, &t), &h, &t);
        let rhs = &uni_resultant(&f, &h, &t) * &uni_resultant(&g, &h, &t);
        ensure(lhs == rhs, || format!("Res(fg,h) != Res(f,h)Res(g,h) at trial {trial}"))?;
    }
    Ok(())
}

fn bezout_ledgers(rng: &mut ChaCha8Rng) -> Verdict {
    for id in [atlas::FERMAT_MTL, atlas::FERMAT_MTP_LINES, atlas::KK_MTL, atlas::KK_MTP_DUAL, atlas::KK_FERMAT_LINES] {
        let c = line_census(atlas_lines(id)).map_err(|e| e.to_string())?;
        ensure(c.bezout_holds(), || format!("Bezout fails for {id}"))?;
    }
    let conics = atlas().map_err(|e| e.to_string())?.get(atlas::KK_CONICS_DIAGONALS).map_err(|e| e.to_string())?.conics();
    let census = conic_census(conics, &[], &towers::kk()).map_err(|e| e.to_string())?;
    ensure(census.bezout_holds(), || "Bezout fails for the 6-conic census".into())?;
    let t = quartica_core::Tower::rationals();
    let mut done = 0;
    while done < 50 {
        let n = rng.gen_range(3..=7);
        let lines: Vec<ProjLine> = (0..n)
            .filter_map(|_| {
                let c = [0, 1, 2].map(|_| FieldElement::from_int(&t, rng.gen_range(-2..=2)));
                ProjLine::new(c).ok()
            })
            .collect();
        match line_census(&lines) {
            Ok(c) => {
                ensure(c.bezout_holds(), || format!("Bezout fails for random lines {lines:?}"))?;
                done += 1;
            }
            Err(Error::DegenerateInput(_)) => {}
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(())
}

fn chart_invariance(rng: &mut ChaCha8Rng) -> Verdict {
    let t = towers::gauss_r2();
    for trial in 0..200 {
        let a = random_point(rng, &t);
        let b = random_point(rng, &t);
        if a == b {
            continue;
        }
        let mut lambdas: Vec<Rational> = Vec::new();
        while lambdas.len() < 4 {
            let l = Rational::new(rng.gen_range(-12..=12), rng.gen_range(1..=5));
            if !lambdas.contains(&l) {
                lambdas.push(l);
            }
        }
        let pts: Vec<ProjPoint> = lambdas
            .iter()
            .map(|l| {
                let c = [0, 1, 2].map(|k| &a.coords()[k] + &b.coords()[k].scale(l));
                ProjPoint::new(c).expect("distinct points span a line")
            })
            .collect();
        let reference = cross_ratio(&pts[0], &pts[1], &pts[2], &pts[3]).map_err(|e| e.to_string())?;
        let mut charts = 0;
        for drop in 0..3 {
            if let Ok(v) = cross_ratio_in_chart(&pts[0], &pts[1], &pts[2], &pts[3], drop) {
                ensure(v == reference, || format!("chart {drop} disagrees at trial {trial}"))?;
                charts += 1;
            }
        }
        ensure(charts >= 2, || format!("only {charts} chart(s) usable at trial {trial}"))?;
    }
    Ok(())
}

fn duality(rng: &mut ChaCha8Rng) -> Verdict {
    let t = towers::kk();
    for trial in 0..300 {
        let p = random_point(rng, &t);
        let q = random_point(rng, &t);
        ensure(dual_point(&dual_line(&p)) == p, || format!("dual involution fails at trial {trial}"))?;
        if let Ok(l) = join(&p, &q) {
            ensure(p.lies_on(&l) && q.lies_on(&l), || "join is not incident".into())?;
            ensure(dual_point(&l).lies_on(&dual_line(&p)), || format!("duality breaks incidence at trial {trial}"))?;
        }
        let l = dual_line(&q);
        ensure(p.lies_on(&l) == dual_point(&l).lies_on(&dual_line(&p)), || format!("duality changes incidence at trial {trial}"))?;
    }
    Ok(())
}

fn branch_residual(rng: &mut ChaCha8Rng) -> Verdict {
    let t = towers::gauss_r2();
    let mut done = 0;
    while done < 60 {
        let p = random_point(rng, &t);
        let terms: Vec<([u32; 3], FieldElement)> =
            monomials_of_degree(4).into_iter().map(|e| (e, random_element(rng, &t))).collect();
        let f = MultiPoly::from_terms(&t, terms);
        let k = (0..3).find(|&k| !p.coords()[k].is_zero()).expect("nonzero coordinate");
        let mut e = [0; 3];
        e[k] = 4;
        let shift =
            f.eval(p.coords()).and_then(|v| v.try_div(&p.coords()[k].pow(4))).map_err(|e| e.to_string())?;
        let g = &f - &MultiPoly::monomial(shift, e);
        let Ok(c) = PlaneCurve::new(g) else { continue };
        let n = rng.gen_range(2..=8);
        match branch_series(&c, &p, n) {
            Ok(b) => {
                let r = b.compose(c.form()).map_err(|e| e.to_string())?;
                ensure(r.len() == n + 1 && r.iter().all(|x| x.is_zero()), || {
                    format!("nonzero residual {r:?} at {p} to order {n}")
                })?;
                done += 1;
            }
            Err(Error::SingularPoint) => {}
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(())
}

fn criterion_13() -> Verdict {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2024);
    let suites: [(&str, fn(&mut ChaCha8Rng) -> Verdict); 7] = [
        ("field axioms", field_axioms),
        ("sqrt soundness", sqrt_soundness),
        ("resultant multiplicativity", resultant_multiplicativity),
        ("Bezout ledgers", bezout_ledgers),
        ("cross-ratio chart invariance", chart_invariance),
        ("duality", duality),
        ("branch residual", branch_residual),
    ];
    for (name, suite) in suites {
        suite(&mut rng).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok(())
}

fn main() {
    let report = reproduce(&Group::ALL);
    let checks = Checks::new(&report);
    let load = checks.passed(&["atlas.verify"]);
    let criteria: Vec<(&str, Verdict)> = vec![
        ("LF census", load.clone().and_then(|_| criterion_1(&checks))),
        ("MTL contact and MTP lists", criterion_2(&checks)),
        ("harmonic MTPs", criterion_3(&checks)),
        ("12 lines through MTP pairs", criterion_4(&checks)),
        ("LK census", criterion_5(&checks)),
        ("PK' census", criterion_6(&checks)),
        ("complete intersections", criterion_7(&checks)),
        ("Hilbert consistency", criterion_8(&checks)),
        ("sextactic classification", criterion_9(&checks)),
        ("bi-osculating conic searches", criterion_10(&checks)),
        ("Fermat conic census", criterion_11(&checks)),
        ("K conic censuses", criterion_12(&checks)),
        ("property suites", criterion_13()),
    ];
    let unchecked: Vec<&str> = checks
        .ids()
        .into_iter()
        .filter(|id| !matches!(checks.get(id).map(|c| c.status), Ok(CheckStatus::Pass | CheckStatus::Derived)))
        .collect();
    let mut failed = 0;
    for (n, (name, verdict)) in criteria.iter().enumerate() {
        match verdict {
            Ok(()) => println!("criterion {:>2} PASS {name}", n + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {:>2} FAIL {name}: {e}", n + 1);
            }
        }
    }
    if !unchecked.is_empty() {
        println!("checks not passing: {unchecked:?}");
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed > 0 || !unchecked.is_empty() {
        std::process::exit(1);
    }
}
