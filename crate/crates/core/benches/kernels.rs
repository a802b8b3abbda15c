use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use quartica_core::census::conic_census;
use quartica_core::geometry::{line_census, Conic, ProjLine};
use quartica_core::ideals::{hilbert_function, PointSet};
use quartica_core::poly::{xyz, MultiPoly};
use quartica_core::{FieldElement, TowerBuilder, TowerRef};

fn fermat_tower() -> TowerRef {
    TowerBuilder::new().adjoin_int("i", -1).unwrap().adjoin_int("r2", 2).unwrap().build()
}

/// The twelve lines `a - eps^k b` for `(a, b)` in `(x, y), (y, z), (z, x)`, `k` odd.
fn fermat_lines(t: &TowerRef) -> Vec<ProjLine> {
    let i = t.generator("i").unwrap();
    let r2 = t.generator("r2").unwrap();
    let eps = &(&(&FieldElement::one(t) + &i) * &r2) * &FieldElement::from_rational(t, quartica_core::Rational::new(1, 2));
    let mut out = Vec::new();
    for (a, b) in [(0, 1), (1, 2), (2, 0)] {
        for k in [1, 3, 5, 7] {
            let mut c = [FieldElement::zero(t), FieldElement::zero(t), FieldElement::zero(t)];
            c[a] = FieldElement::one(t);
            c[b] = -&eps.pow(k);
            out.push(ProjLine::new(c).unwrap());
        }
    }
    out
}

/// Six conics `4a^2 + 11b^2 +- 2bc + 11c^2` and their cyclic shifts.
fn diagonal_conics() -> Vec<Conic> {
    let t = TowerBuilder::new().adjoin_int("i", -1).unwrap().adjoin_int("s5", 5).unwrap().build();
    let (x, y, z) = xyz(&t);
    let c = |n: i64| MultiPoly::constant(FieldElement::from_int(&t, n));
    let mut out = Vec::new();
    for (a, b, d) in [(&x, &y, &z), (&y, &z, &x), (&z, &x, &y)] {
        for s in [2, -2] {
            let q = &(&(&(&c(4) * &a.pow(2)) + &(&c(11) * &b.pow(2))) + &(&c(s) * &(b * d))) + &(&c(11) * &d.pow(2));
            out.push(Conic::from_poly(&q).unwrap());
        }
    }
    out
}

/// Runs `f` on a one-thread pool, the sequential baseline.
#[cfg(feature = "parallel")]
fn sequential<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    rayon::ThreadPoolBuilder::new().num_threads(1).build().unwrap().install(f)
}

#[cfg(not(feature = "parallel"))]
fn sequential<R: Send>(f: impl FnOnce() -> R + Send) -> R {
    f()
}

fn modes() -> Vec<&'static str> {
    if quartica_core::par::is_parallel() {
        vec!["parallel", "sequential"]
    } else {
        vec!["sequential"]
    }
}

fn run<R: Send>(mode: &str, f: impl FnOnce() -> R + Send) -> R {
    if mode == "parallel" {
        f()
    } else {
        sequential(f)
    }
}

fn bench_line_census(c: &mut Criterion) {
    let lines = fermat_lines(&fermat_tower());
    let mut g = c.benchmark_group("line_census");
    for mode in modes() {
        g.bench_with_input(BenchmarkId::new(mode, lines.len()), &lines, |b, ls| b.iter(|| run(mode, || line_census(ls).unwrap())));
    }
    g.finish();
}

fn bench_hilbert(c: &mut Criterion) {
    let lines = fermat_lines(&fermat_tower());
    let ps = PointSet::new(line_census(&lines).unwrap().pn(2)).unwrap();
    let mut g = c.benchmark_group("hilbert_function");
    g.sample_size(10);
    for mode in modes() {
        g.bench_with_input(BenchmarkId::new(mode, 8), &ps, |b, ps| {
            b.iter(|| run(mode, || (0..=10).map(|t| hilbert_function(ps, t)).collect::<Vec<_>>()))
        });
    }
    g.finish();
}

fn bench_conic_census(c: &mut Criterion) {
    let conics = diagonal_conics();
    let t = conics[0].tower().clone();
    let mut g = c.benchmark_group("conic_census");
    g.sample_size(10);
    for mode in modes() {
        g.bench_with_input(BenchmarkId::new(mode, conics.len()), &conics, |b, qs| {
            b.iter(|| run(mode, || conic_census(qs, &[], &t).unwrap()))
        });
    }
    g.finish();
}

criterion_group!(benches, bench_line_census, bench_hilbert, bench_conic_census);
criterion_main!(benches);
