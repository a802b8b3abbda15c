//! Explicit curves, lines, points, conics and polynomials as verified
//! constants. Each entry re-proves its defining property when the atlas loads.

use std::collections::{BTreeSet, HashSet};

use once_cell::sync::Lazy;
use serde::Serialize;
use thiserror::Error;

use quartica_core::contact::{contact_order, mtl_verify, PlaneCurve, DEFAULT_CAP};
use quartica_core::geometry::{dual_point, Conic, ProjLine, ProjPoint};
use quartica_core::poly::{restrict_to_line, MultiPoly};
use quartica_core::{par, TowerRef};
use quartica_dsl::{Evaluator, Value};

use crate::towers;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AtlasError {
    #[error("unknown atlas id `{0}`")]
    UnknownId(String),
    #[error("atlas entry `{id}` failed verification: {reason}")]
    LoadVerificationFailure { id: String, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EntryKind {
    Curve,
    LineSet,
    PointSet,
    ConicSet,
    Polynomial,
}

#[derive(Debug, Clone)]
pub enum Payload {
    Curve(PlaneCurve),
    Lines(Vec<ProjLine>),
    Points(Vec<ProjPoint>),
    Conics(Vec<Conic>),
    /// A polynomial kept as its printed list of factors.
    Factored(Vec<MultiPoly>),
    /// Several polynomials, each kept as a list of factors.
    Generators(Vec<Vec<MultiPoly>>),
}

#[derive(Debug, Clone)]
pub struct AtlasEntry {
    pub id: &'static str,
    pub kind: EntryKind,
    pub description: &'static str,
    pub paper_ref: &'static str,
    pub payload: Payload,
}

fn product(fs: &[MultiPoly]) -> MultiPoly {
    let mut it = fs.iter();
    let first = it.next().expect("nonempty factor list").clone();
    it.fold(first, |acc, f| &acc * f)
}

impl AtlasEntry {
    pub fn curve(&self) -> &PlaneCurve {
        match &self.payload {
            Payload::Curve(c) => c,
            _ => panic!("`{}` is not a curve", self.id),
        }
    }

    pub fn lines(&self) -> &[ProjLine] {
        match &self.payload {
            Payload::Lines(v) => v,
            _ => panic!("`{}` is not a line set", self.id),
        }
    }

    pub fn points(&self) -> &[ProjPoint] {
        match &self.payload {
            Payload::Points(v) => v,
            _ => panic!("`{}` is not a point set", self.id),
        }
    }

    pub fn conics(&self) -> &[Conic] {
        match &self.payload {
            Payload::Conics(v) => v,
            _ => panic!("`{}` is not a conic set", self.id),
        }
    }

    /// The expanded polynomial of a curve or factored polynomial entry.
    pub fn poly(&self) -> MultiPoly {
        match &self.payload {
            Payload::Curve(c) => c.form().clone(),
            Payload::Factored(fs) => product(fs),
            _ => panic!("`{}` is not a polynomial", self.id),
        }
    }

    pub fn factors(&self) -> &[MultiPoly] {
        match &self.payload {
            Payload::Factored(fs) => fs,
            _ => panic!("`{}` is not a factored polynomial", self.id),
        }
    }

    pub fn generators(&self) -> &[Vec<MultiPoly>] {
        match &self.payload {
            Payload::Generators(g) => g,
            _ => panic!("`{}` is not a generator list", self.id),
        }
    }

    /// Printable payload.
    pub fn render(&self) -> Vec<String> {
        match &self.payload {
            Payload::Curve(c) => vec![c.form().to_string()],
            Payload::Lines(v) => v.iter().map(|l| l.form().to_string()).collect(),
            Payload::Points(v) => v.iter().map(|p| p.to_string()).collect(),
            Payload::Conics(v) => v.iter().map(|c| c.to_poly().to_string()).collect(),
            Payload::Factored(fs) => vec![fs.iter().map(|f| format!("({f})")).collect::<Vec<_>>().join("*")],
            Payload::Generators(g) => {
                g.iter().map(|fs| fs.iter().map(|f| format!("({f})")).collect::<Vec<_>>().join("*")).collect()
            }
        }
    }
}

/// A scenario evaluator over `t` with the usual named constants.
fn evaluator(t: TowerRef) -> Evaluator {
    let mut ev = Evaluator::with_tower(t.clone());
    let names: BTreeSet<String> = t.generator_names().map(str::to_string).collect();
    if names.contains("r2") {
        let eps = ev.eval_str("(1 + i)*r2/2").expect("eps");
        ev.bind("eps", eps).expect("bind eps");
    }
    if names.contains("s3") {
        let w = ev.eval_str("i*s3 + 1").expect("w");
        ev.bind("w", w).expect("bind w");
    }
    ev
}

struct Data {
    ev: Evaluator,
}

impl Data {
    fn new(t: TowerRef) -> Self {
        Data { ev: evaluator(t) }
    }

    fn value(&mut self, text: &str) -> Value {
        self.ev.eval_str(text).unwrap_or_else(|e| panic!("atlas data `{text}`: {e}"))
    }

    fn poly(&mut self, text: &str) -> MultiPoly {
        match self.value(text) {
            Value::Poly(p) => p,
            other => panic!("atlas data `{text}` is a {}", other.type_name()),
        }
    }

    fn point(&mut self, text: &str) -> ProjPoint {
        match self.value(text) {
            Value::Point(p) => p,
            other => panic!("atlas data `{text}` is a {}", other.type_name()),
        }
    }

    fn points(&mut self, texts: &[String]) -> Vec<ProjPoint> {
        texts.iter().map(|s| self.point(s)).collect()
    }

    fn line(&mut self, text: &str) -> ProjLine {
        ProjLine::from_form(&self.poly(text)).unwrap_or_else(|e| panic!("atlas line `{text}`: {e}"))
    }

    fn conic(&mut self, text: &str) -> Conic {
        Conic::from_poly(&self.poly(text)).unwrap_or_else(|e| panic!("atlas conic `{text}`: {e}"))
    }
}

/// Cyclic shifts `x -> y -> z -> x` of a template written in `x, y, z`.
fn cyclic(template: &str) -> [String; 3] {
    fn shift(s: &str) -> String {
        s.chars()
            .map(|c| match c {
                'x' => 'y',
                'y' => 'z',
                'z' => 'x',
                c => c,
            })
            .collect()
    }
    let a = template.to_string();
    let b = shift(&a);
    let c = shift(&b);
    [a, b, c]
}

/// The six placements `(s : w : 0), (s : 0 : w), (0 : s : w), (w : s : 0),
/// (w : 0 : s), (0 : w : s)` for each `s`.
fn coordinate_placements(signs: &[&str], w: &str) -> Vec<String> {
    let mut out = Vec::new();
    for layout in ["({s} : {w} : 0)", "({s} : 0 : {w})", "(0 : {s} : {w})", "({w} : {s} : 0)", "({w} : 0 : {s})", "(0 : {w} : {s})"] {
        for s in signs {
            out.push(layout.replace("{s}", s).replace("{w}", w));
        }
    }
    out
}

pub const FERMAT_QUARTIC: &str = "fermat.quartic";
pub const KK_QUARTIC: &str = "kk.quartic";
pub const FERMAT_H: &str = "fermat.h";
pub const FERMAT_MTL: &str = "fermat.mtl";
pub const FERMAT_MTP: &str = "fermat.mtp";
pub const FERMAT_MTP_LINES: &str = "fermat.mtp_lines";
pub const FERMAT_GENERATORS: &str = "fermat.doubles.generators";
pub const KK_MTL: &str = "kk.mtl";
pub const KK_MTP: &str = "kk.mtp";
pub const KK_MTP_DUAL: &str = "kk.mtp_dual";
pub const KK_FERMAT_LINES: &str = "kk.fermat_lines";
pub const FERMAT_H2: &str = "fermat.h2";
pub const FERMAT_SEXTACTIC_CI: &str = "fermat.sextactic.ci_form";
pub const FERMAT_SEXTACTIC: &str = "fermat.sextactic";
pub const KK_H2: &str = "kk.h2";
pub const KK_Q: &str = "kk.q";
pub const KK_SEXTACTIC_AXES: &str = "kk.sextactic.axes";
pub const KK_SEXTACTIC_DIAGONALS: &str = "kk.sextactic.diagonals";
pub const KK_SEXTIC: &str = "kk.sextic";
pub const FERMAT_CONICS: &str = "fermat.conics";
pub const KK_CONICS_AXES: &str = "kk.conics.axes";
pub const KK_CONICS_DIAGONALS: &str = "kk.conics.diagonals";
pub const FERMAT_OCTIC_TACNODE: &str = "fermat.octic.tacnode";
pub const FERMAT_OCTIC_QUADRUPLE: &str = "fermat.octic.quadruple";
pub const FERMAT_TACNODES: &str = "fermat.tacnodes";
pub const FERMAT_QUADRUPLE: &str = "fermat.quadruple";

const Q_TEXT: &str = "1056*x^12 - 19278*x^10*y^2 - 75207*x^8*y^4 - 111042*x^6*y^6 - 75207*x^4*y^8 - 19278*x^2*y^10 + 1056*y^12 \
    - 19278*x^10*z^2 - 137198*x^8*y^2*z^2 - 287194*x^6*y^4*z^2 - 287194*x^4*y^6*z^2 - 137198*x^2*y^8*z^2 \
    - 19278*y^10*z^2 - 75207*x^8*z^4 - 287194*x^6*y^2*z^4 - 413110*x^4*y^4*z^4 - 287194*x^2*y^6*z^4 - 75207*y^8*z^4 \
    - 111042*x^6*z^6 - 287194*x^4*y^2*z^6 - 287194*x^2*y^4*z^6 - 111042*y^6*z^6 - 75207*x^4*z^8 - 137198*x^2*y^2*z^8 \
    - 75207*y^4*z^8 - 19278*x^2*z^10 - 19278*y^2*z^10 + 1056*z^12";

const SEXTIC_TEXT: &str = "90*x^2*y^4 + 124*x^2*y^2*z^2 + 90*x^2*z^4 + 45*y^6 + 135*y^4*z^2 + 135*y^2*z^4 + 45*z^6";

fn entry(id: &'static str, kind: EntryKind, description: &'static str, paper_ref: &'static str, payload: Payload) -> AtlasEntry {
    AtlasEntry { id, kind, description, paper_ref, payload }
}

/// Builds every entry from its printed data, without verification.
fn build_entries() -> Vec<AtlasEntry> {
    use EntryKind::*;
    let mut f = Data::new(towers::fermat());
    let mut k = Data::new(towers::kk());
    let mut c = Data::new(towers::gauss_r2());
    let mut tac = Data::new(towers::tacnode());
    let mut out = Vec::new();

    let fermat = PlaneCurve::new(f.poly("x^4 + y^4 + z^4")).expect("quartic");
    out.push(entry(FERMAT_QUARTIC, Curve, "Fermat quartic", "Fermat quartic equation", Payload::Curve(fermat)));
    let kk = PlaneCurve::new(k.poly("x^4 + y^4 + z^4 + 3*(x^2*y^2 + x^2*z^2 + y^2*z^2)")).expect("quartic");
    out.push(entry(KK_QUARTIC, Curve, "Komiya-Kuribayashi quartic", "Komiya-Kuribayashi quartic equation", Payload::Curve(kk)));

    let h: Vec<MultiPoly> = ["x^4 + y^4", "y^4 + z^4", "z^4 + x^4"].iter().map(|s| f.poly(s)).collect();
    out.push(entry(FERMAT_H, Polynomial, "product whose linear factors are the Fermat MTLs", "Fermat MTL product H", Payload::Factored(h)));
    let mut lf = Vec::new();
    for (a, b) in [("x", "y"), ("y", "z"), ("z", "x")] {
        for kk in [1, 3, 5, 7] {
            lf.push(f.line(&format!("{a} - eps^{kk}*{b}")));
        }
    }
    out.push(entry(FERMAT_MTL, LineSet, "the 12 linear factors of H", "Fermat MTL arrangement LF", Payload::Lines(lf)));
    let mut pf = Vec::new();
    for kk in [1, 3, 5, 7] {
        for layout in ["(0 : 1 : eps^{k})", "(eps^{k} : 0 : 1)", "(1 : eps^{k} : 0)"] {
            pf.push(f.point(&layout.replace("{k}", &kk.to_string())));
        }
    }
    out.push(entry(FERMAT_MTP, PointSet, "the 12 maximal tangency points of F", "Fermat MTP list PF", Payload::Points(pf)));
    let mut ml = Vec::new();
    for kk in [1, 3, 5, 7] {
        for t in cyclic("x + eps^{2k}*y - eps^{k}*z") {
            ml.push(f.line(&t.replace("{2k}", &(2 * kk).to_string()).replace("{k}", &kk.to_string())));
        }
    }
    out.push(entry(FERMAT_MTP_LINES, LineSet, "12 lines through pairs of Fermat MTPs", "Fermat 12-line MTP arrangement", Payload::Lines(ml)));
    let gens = [["x^4 + y^4", "x^4 + z^4"], ["x^4 + y^4", "y^4 + z^4"], ["x^4 + z^4", "y^4 + z^4"]]
        .iter()
        .map(|pair| pair.iter().map(|s| f.poly(s)).collect())
        .collect();
    out.push(entry(
        FERMAT_GENERATORS,
        Polynomial,
        "degree-8 generators of the ideal of the 48 double points of LF",
        "ideal generators of the LF double points",
        Payload::Generators(gens),
    ));

    let lk: Vec<ProjLine> = [
        "-2*i*x - y + z", "-2*i*x + y + z", "2*i*x - y + z", "2*i*x + y + z",
        "-2*i*y - x + z", "-2*i*y + x + z", "2*i*y - x + z", "2*i*y + x + z",
        "-2*i*z - y + x", "-2*i*z + y + x", "2*i*z - y + x", "2*i*z + y + x",
    ]
    .iter()
    .map(|s| k.line(s))
    .collect();
    out.push(entry(KK_MTL, LineSet, "Edge's 12 maximal tangency lines of K", "Komiya-Kuribayashi MTL list LK", Payload::Lines(lk)));
    let pk: Vec<ProjPoint> = [
        "(i : 1 : -1)", "(-i : 1 : 1)", "(-i : 1 : -1)", "(i : 1 : 1)",
        "(-1 : -i : 1)", "(1 : -i : 1)", "(-1 : i : 1)", "(1 : i : 1)",
        "(1 : -1 : -i)", "(1 : 1 : -i)", "(1 : -1 : i)", "(1 : 1 : i)",
    ]
    .iter()
    .map(|s| k.point(s))
    .collect();
    let pkd: Vec<ProjLine> = pk.iter().map(quartica_core::geometry::dual_line).collect();
    out.push(entry(KK_MTP, PointSet, "the 12 maximal tangency points of K", "Komiya-Kuribayashi MTP list PK", Payload::Points(pk)));
    out.push(entry(KK_MTP_DUAL, LineSet, "lines dual to the K tangency points", "dual arrangement PK'", Payload::Lines(pkd)));
    let fl: Vec<ProjLine> = ["x - y", "x + y", "y - z", "y + z", "z - x", "z + x"].iter().map(|s| k.line(s)).collect();
    out.push(entry(KK_FERMAT_LINES, LineSet, "linear factors of (x^2-y^2)(y^2-z^2)(z^2-x^2)", "Fermat arrangement of six lines", Payload::Lines(fl)));

    let h2f: Vec<MultiPoly> = ["x^3*y^3*z^3", "x^4 - y^4", "y^4 - z^4", "z^4 - x^4"].iter().map(|s| f.poly(s)).collect();
    out.push(entry(FERMAT_H2, Polynomial, "printed second Hessian of F, up to scalar", "second Hessian of F", Payload::Factored(h2f)));
    let g: Vec<MultiPoly> = ["x^4 - y^4", "y^4 - z^4", "z^4 - x^4"].iter().map(|s| f.poly(s)).collect();
    out.push(entry(
        FERMAT_SEXTACTIC_CI,
        Polynomial,
        "degree-12 form cutting the proper sextactic points out of F",
        "complete intersection for the Fermat sextactic points",
        Payload::Factored(g),
    ));
    let mut sx = Vec::new();
    for kk in [1, 3, 5, 7] {
        for l in [1, 3, 5, 7] {
            sx.push(format!("(1 : eps^{} : q2*eps^{l})", kk - 1));
            sx.push(format!("(1 : q2*eps^{kk} : eps^{})", l - 1));
            sx.push(format!("(1 : eps^{kk}/q2 : eps^{l}/q2)"));
        }
    }
    let sx = f.points(&sx);
    out.push(entry(FERMAT_SEXTACTIC, PointSet, "the 48 proper sextactic points of F", "Fermat sextactic point list", Payload::Points(sx)));

    let q = k.poly(Q_TEXT);
    let mut h2k: Vec<MultiPoly> = ["x*y*z", "x^2 - y^2", "y^2 - z^2", "z^2 - x^2"].iter().map(|s| k.poly(s)).collect();
    h2k.push(q.clone());
    out.push(entry(KK_H2, Polynomial, "printed second Hessian of K, up to scalar", "second Hessian of K", Payload::Factored(h2k)));
    out.push(entry(KK_Q, Polynomial, "degree-12 factor Q of the second Hessian of K", "factor Q of the second Hessian of K", Payload::Factored(vec![q])));
    let sa: Vec<String> = [
        "(0 : 2 : i*(s5 + 1))", "(0 : 2 : -i*(s5 + 1))", "(i*(s5 + 1) : 0 : 2)", "(-i*(s5 + 1) : 0 : 2)",
        "(2 : i*(s5 + 1) : 0)", "(2 : -i*(s5 + 1) : 0)", "(0 : 2 : i*(s5 - 1))", "(0 : 2 : -i*(s5 - 1))",
        "(i*(s5 - 1) : 0 : 2)", "(-i*(s5 - 1) : 0 : 2)", "(2 : i*(s5 - 1) : 0)", "(2 : -i*(s5 - 1) : 0)",
    ]
    .map(String::from)
    .to_vec();
    let sa = k.points(&sa);
    out.push(entry(KK_SEXTACTIC_AXES, PointSet, "sextactic points S1..S12 of K on the coordinate lines", "K sextactic points S1-S12", Payload::Points(sa)));
    let sd: Vec<String> = [
        "(1 : 1 : i*s5)", "(1 : 1 : -i*s5)", "(1 : i*s5 : 1)", "(1 : -i*s5 : 1)", "(i*s5 : 1 : 1)", "(-i*s5 : 1 : 1)",
        "(1 : -1 : i*s5)", "(1 : -1 : -i*s5)", "(-1 : i*s5 : 1)", "(-1 : -i*s5 : 1)", "(i*s5 : 1 : -1)", "(-i*s5 : 1 : -1)",
    ]
    .map(String::from)
    .to_vec();
    let sd = k.points(&sd);
    out.push(entry(
        KK_SEXTACTIC_DIAGONALS,
        PointSet,
        "sextactic points S13..S24 of K on the lines x = ±y, y = ±z, z = ±x",
        "K sextactic points S13-S24",
        Payload::Points(sd),
    ));
    let sextic = k.poly(SEXTIC_TEXT);
    out.push(entry(KK_SEXTIC, Polynomial, "sextic through the remaining 24 sextactic points of K", "K residual sextic", Payload::Factored(vec![sextic])));

    let mut fc = Vec::new();
    for t in ["x^2 {s} x*y + y^2 {t} i*r2/2*z^2", "x^2 {s} i*x*y - y^2 {t} i*r2/2*z^2"] {
        for rot in cyclic(t) {
            for s in ["+", "-"] {
                for sign in ["+", "-"] {
                    fc.push(c.conic(&rot.replace("{s}", s).replace("{t}", sign)));
                }
            }
        }
    }
    out.push(entry(FERMAT_CONICS, ConicSet, "24 conics bi-osculating F at proper sextactic points", "Fermat bi-osculating conics", Payload::Conics(fc)));
    let mut ka = Vec::new();
    for t in ["3*x^2 + 2*y^2 {s} 2*i*y*z + 2*z^2", "6*x^2 + (5 {s} s5)*y^2 + (5 {o} s5)*z^2"] {
        for rot in cyclic(t) {
            for (s, o) in [("+", "-"), ("-", "+")] {
                ka.push(k.conic(&rot.replace("{s}", s).replace("{o}", o)));
            }
        }
    }
    out.push(entry(KK_CONICS_AXES, ConicSet, "12 conics bi-osculating K at S1..S12", "K bi-osculating conics on S1-S12", Payload::Conics(ka)));
    let mut kd = Vec::new();
    for rot in cyclic("4*x^2 + 11*y^2 {s} 2*y*z + 11*z^2") {
        for s in ["+", "-"] {
            kd.push(k.conic(&rot.replace("{s}", s)));
        }
    }
    out.push(entry(KK_CONICS_DIAGONALS, ConicSet, "6 conics bi-osculating K at S13..S24", "K bi-osculating conics on S13-S24", Payload::Conics(kd)));

    let o1 = f.poly("x^8 + y^8 + z^8 + x^4*y^4 + y^4*z^4 + z^4*x^4");
    let o2 = f.poly("x^8 + y^8 + z^8 + 5/2*(x^4*y^4 + y^4*z^4 + z^4*x^4)");
    out.push(entry(FERMAT_OCTIC_TACNODE, Polynomial, "octic through the 24 tacnodes", "tacnode octic", Payload::Factored(vec![o1])));
    out.push(entry(FERMAT_OCTIC_QUADRUPLE, Polynomial, "octic through the 24 quadruple points", "quadruple-point octic", Payload::Factored(vec![o2])));
    let tn = tac.points(&coordinate_placements(&["2", "-2", "2*i", "-2*i"], "w"));
    out.push(entry(FERMAT_TACNODES, PointSet, "24 tacnodes of the Fermat conic arrangement", "Fermat conic tacnodes", Payload::Points(tn)));
    let qp = f.points(&coordinate_placements(&["1", "-1", "i", "-i"], "eps*q2"));
    out.push(entry(FERMAT_QUADRUPLE, PointSet, "24 ordinary quadruple points of the Fermat conic arrangement", "Fermat conic quadruple points", Payload::Points(qp)));
    out
}

fn fail(id: &str, reason: impl Into<String>) -> AtlasError {
    AtlasError::LoadVerificationFailure { id: id.to_string(), reason: reason.into() }
}

fn distinct<T: std::hash::Hash + Eq>(v: &[T]) -> bool {
    v.iter().collect::<HashSet<&T>>().len() == v.len()
}

fn same_set(a: &[ProjPoint], b: &[ProjPoint]) -> bool {
    a.iter().collect::<BTreeSet<_>>() == b.iter().collect::<BTreeSet<_>>()
}

fn vanishes(p: &MultiPoly, pts: &[ProjPoint]) -> Result<bool, quartica_core::Error> {
    for q in pts {
        if !p.eval(q.coords())?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// The loaded, verified atlas.
pub struct Atlas {
    entries: Vec<AtlasEntry>,
}

impl Atlas {
    pub fn load() -> Result<Self, AtlasError> {
        let atlas = Atlas { entries: build_entries() };
        let ids: Vec<&'static str> = atlas.entries.iter().map(|e| e.id).collect();
        let results = par::map(&ids, |id| atlas.verify(id));
        results.into_iter().collect::<Result<Vec<()>, _>>()?;
        Ok(atlas)
    }

    pub fn ids(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.entries.iter().map(|e| e.id)
    }

    pub fn entries(&self) -> &[AtlasEntry] {
        &self.entries
    }

    pub fn get(&self, id: &str) -> Result<&AtlasEntry, AtlasError> {
        self.entries.iter().find(|e| e.id == id).ok_or_else(|| AtlasError::UnknownId(id.to_string()))
    }

    fn e(&self, id: &str) -> &AtlasEntry {
        self.get(id).expect("atlas ids are internal constants")
    }

    /// Re-proves the defining property of entry `id`.
    pub fn verify(&self, id: &str) -> Result<(), AtlasError> {
        let k = |e: quartica_core::Error| fail(id, e.to_string());
        let check = |ok: bool, reason: &str| if ok { Ok(()) } else { Err(fail(id, reason)) };
        let entry = self.get(id)?;
        match id {
            FERMAT_QUARTIC | KK_QUARTIC => check(entry.curve().degree() == 4, "not a quartic"),
            FERMAT_H => check(entry.poly().degree() == Some(12), "degree is not 12"),
            FERMAT_MTL => {
                let f = self.e(FERMAT_QUARTIC).curve();
                let h = self.e(FERMAT_H).poly();
                let lines = entry.lines();
                check(lines.len() == 12 && distinct(lines), "expected 12 distinct lines")?;
                for l in lines {
                    check(restrict_to_line(&h, l).map_err(k)?.poly.is_zero(), "line is not a factor of H")?;
                    check(mtl_verify(f, l).map_err(k)?.is_mtl, "line is not a maximal tangency line")?;
                }
                Ok(())
            }
            FERMAT_MTP => {
                let f = self.e(FERMAT_QUARTIC).curve();
                let pts = entry.points();
                check(pts.len() == 12 && distinct(pts), "expected 12 distinct points")?;
                let duals: Vec<ProjPoint> = self.e(FERMAT_MTL).lines().iter().map(dual_point).collect();
                check(same_set(pts, &duals), "points are not the duals of LF")?;
                let mut tangency = Vec::new();
                for l in self.e(FERMAT_MTL).lines() {
                    tangency.extend(mtl_verify(f, l).map_err(k)?.point);
                }
                check(same_set(pts, &tangency), "points are not the tangency points of LF")
            }
            FERMAT_MTP_LINES => {
                let pf = self.e(FERMAT_MTP).points();
                for l in entry.lines() {
                    check(pf.iter().filter(|p| p.lies_on(l)).count() == 2, "line does not carry exactly two MTPs")?;
                }
                check(entry.lines().len() == 12 && distinct(entry.lines()), "expected 12 distinct lines")
            }
            FERMAT_GENERATORS => {
                let census = quartica_core::geometry::line_census(self.e(FERMAT_MTL).lines()).map_err(k)?;
                let doubles = census.pn(2);
                for g in entry.generators() {
                    check(vanishes(&product(g), &doubles).map_err(k)?, "generator does not vanish on the double points")?;
                }
                Ok(())
            }
            KK_MTL => {
                let kk = self.e(KK_QUARTIC).curve();
                let pk = self.e(KK_MTP).points();
                check(entry.lines().len() == 12 && distinct(entry.lines()), "expected 12 distinct lines")?;
                for l in entry.lines() {
                    let r = mtl_verify(kk, l).map_err(k)?;
                    check(r.is_mtl, "line is not a maximal tangency line")?;
                    check(r.point.is_some_and(|p| pk.contains(&p)), "tangency point is not listed")?;
                }
                Ok(())
            }
            KK_MTP => {
                let kk = self.e(KK_QUARTIC).poly();
                check(entry.points().len() == 12 && distinct(entry.points()), "expected 12 distinct points")?;
                check(vanishes(&kk, entry.points()).map_err(k)?, "point not on K")
            }
            KK_MTP_DUAL => {
                let duals: Vec<ProjPoint> = entry.lines().iter().map(dual_point).collect();
                check(same_set(&duals, self.e(KK_MTP).points()), "lines are not dual to PK")
            }
            KK_FERMAT_LINES => {
                let prod = self.e(KK_FERMAT_LINES).lines().iter().fold(None::<MultiPoly>, |acc, l| {
                    Some(match acc {
                        None => l.form(),
                        Some(a) => &a * &l.form(),
                    })
                });
                check(vanishes(&prod.expect("six lines"), self.e(KK_MTP).points()).map_err(k)?, "an MTP is off the six lines")
            }
            FERMAT_H2 => {
                let h2 = entry.poly();
                check(h2.degree() == Some(21), "degree is not 21")?;
                check(vanishes(&h2, self.e(FERMAT_MTP).points()).map_err(k)?, "does not vanish on the MTPs")?;
                check(vanishes(&h2, self.e(FERMAT_SEXTACTIC).points()).map_err(k)?, "does not vanish on the sextactic points")
            }
            FERMAT_SEXTACTIC_CI => check(entry.poly().degree() == Some(12), "degree is not 12"),
            FERMAT_SEXTACTIC => {
                let pts = entry.points();
                check(pts.len() == 48 && distinct(pts), "expected 48 distinct points")?;
                check(vanishes(&self.e(FERMAT_QUARTIC).poly(), pts).map_err(k)?, "point not on F")?;
                check(vanishes(&self.e(FERMAT_SEXTACTIC_CI).poly(), pts).map_err(k)?, "point off the degree-12 form")
            }
            KK_H2 => {
                let h2 = entry.poly();
                check(h2.degree() == Some(21), "degree is not 21")?;
                for set in [KK_SEXTACTIC_AXES, KK_SEXTACTIC_DIAGONALS, KK_MTP] {
                    check(vanishes(&h2, self.e(set).points()).map_err(k)?, "does not vanish on a listed point")?;
                }
                Ok(())
            }
            KK_Q => {
                check(entry.poly().degree() == Some(12), "degree is not 12")?;
                check(vanishes(&entry.poly(), self.e(KK_MTP).points()).map_err(k)?, "does not vanish on the MTPs")
            }
            KK_SEXTACTIC_AXES | KK_SEXTACTIC_DIAGONALS => {
                let pts = entry.points();
                check(pts.len() == 12 && distinct(pts), "expected 12 distinct points")?;
                check(vanishes(&self.e(KK_QUARTIC).poly(), pts).map_err(k)?, "point not on K")
            }
            KK_SEXTIC => check(entry.poly().is_homogeneous() && entry.poly().degree() == Some(6), "not a sextic form"),
            FERMAT_CONICS | KK_CONICS_AXES | KK_CONICS_DIAGONALS => {
                let (curve, pts, n) = match id {
                    FERMAT_CONICS => (FERMAT_QUARTIC, FERMAT_SEXTACTIC, 24),
                    KK_CONICS_AXES => (KK_QUARTIC, KK_SEXTACTIC_AXES, 12),
                    _ => (KK_QUARTIC, KK_SEXTACTIC_DIAGONALS, 6),
                };
                let curve = self.e(curve).curve();
                let pts = self.e(pts).points();
                check(entry.conics().len() == n && distinct(entry.conics()), "wrong number of distinct conics")?;
                for q in entry.conics() {
                    let on: Vec<&ProjPoint> = pts.iter().filter(|p| q.contains(p)).collect();
                    check(on.len() == 2, "conic does not pass through exactly two sextactic points")?;
                    for p in on {
                        let r = contact_order(curve, &q.to_poly(), p, DEFAULT_CAP).map_err(k)?;
                        check(r.order >= 4, "contact below 4")?;
                    }
                }
                Ok(())
            }
            FERMAT_OCTIC_TACNODE | FERMAT_OCTIC_QUADRUPLE => {
                let pts = if id == FERMAT_OCTIC_TACNODE { FERMAT_TACNODES } else { FERMAT_QUADRUPLE };
                check(vanishes(&entry.poly(), self.e(pts).points()).map_err(k)?, "octic does not vanish on its points")
            }
            FERMAT_TACNODES | FERMAT_QUADRUPLE => {
                let want = if id == FERMAT_TACNODES { 2 } else { 4 };
                let pts = entry.points();
                check(pts.len() == 24 && distinct(pts), "expected 24 distinct points")?;
                for p in pts {
                    let n = self.e(FERMAT_CONICS).conics().iter().filter(|q| q.contains(p)).count();
                    check(n == want, "wrong number of conics through a point")?;
                }
                Ok(())
            }
            _ => Err(AtlasError::UnknownId(id.to_string())),
        }
    }
}

static ATLAS: Lazy<Result<Atlas, AtlasError>> = Lazy::new(Atlas::load);

/// The process-wide atlas, loaded and verified on first use.
pub fn atlas() -> Result<&'static Atlas, AtlasError> {
    ATLAS.as_ref().map_err(Clone::clone)
}

pub fn atlas_get(id: &str) -> Result<&'static AtlasEntry, AtlasError> {
    atlas()?.get(id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn atlas_loads_and_verifies() {
        let a = atlas().unwrap();
        assert_eq!(a.get(FERMAT_MTL).unwrap().lines().len(), 12);
        assert_eq!(a.get(FERMAT_SEXTACTIC).unwrap().points().len(), 48);
        assert!(matches!(a.get("nope"), Err(AtlasError::UnknownId(_))));
    }
}
