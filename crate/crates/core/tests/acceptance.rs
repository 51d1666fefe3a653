//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`). The process fails when a
//! criterion fails, except for criteria listed in [`KNOWN_RED`], which are
//! still reported as FAIL.

use std::time::{Duration, Instant};

use num_complex::Complex64 as C64;

use qspectra::catalog::catalog;
use qspectra::green::{default_scan_window, green, pole_scan};
use qspectra::oracle::GridProblem;
use qspectra::potentials::{Kind, Params, PotentialSpec};
use qspectra::qhyp::{cosh_q, coth_q, sinh_q, tanh_q, Deformation};
use qspectra::specfun::{gamma_real, hyp2f1, jacobi_p, legendre_p, JacobiArgs, LegendreArgs};
use qspectra::spectra::{q_reduction_check, spectrum, v7_condition, v7_levels, v8_condition, V7_FILTER_TOL};
use qspectra::verify::{oracle_grid, verify_spec, VerifyOptions};
use qspectra::wavefun::{bound_states, gram_matrix};

/// Criteria whose failure reflects a claim the computation contradicts.
const KNOWN_RED: &[&str] = &["5c"];

struct Verdict {
    pass: bool,
    detail: String,
}

fn verdict(failures: Vec<String>, ok: String) -> Verdict {
    if failures.is_empty() {
        Verdict { pass: true, detail: ok }
    } else {
        let shown: Vec<_> = failures.iter().take(4).cloned().collect();
        Verdict { pass: false, detail: format!("{} failure(s): {}", failures.len(), shown.join("; ")) }
    }
}

fn v1(nu: f64, q: f64) -> PotentialSpec {
    PotentialSpec::natural(Kind::V1, Params::V1 { nu }, q).unwrap()
}

const CLOSED_KINDS: [Kind; 6] = [Kind::V1, Kind::V2, Kind::V3, Kind::V4, Kind::V5, Kind::V6];

fn c1_deformation_algebra() -> Verdict {
    let mut fails = Vec::new();
    let mut worst_id = 0.0f64;
    let mut worst_d = 0.0f64;
    for q in [1e-2, 0.5, 1.0, 2.0, 1e2] {
        let d = Deformation::new(q).unwrap();
        for i in 0..=2000 {
            let x = -10.0 + 20.0 * i as f64 / 2000.0;
            let (s, c) = (sinh_q(x, &d).unwrap(), cosh_q(x, &d).unwrap());
            // relative to the size of the squared terms
            let err = (c * c - s * s - q).abs() / (c * c).max(q);
            worst_id = worst_id.max(err);
            if err > 1e-12 {
                fails.push(format!("identity q={q} x={x}: {err:e}"));
            }
            if (x - d.shift()).abs() < 0.05 {
                continue;
            }
            let h = 1e-5;
            let cd = |f: &dyn Fn(f64) -> f64| (f(x + h) - f(x - h)) / (2.0 * h);
            let checks = [
                (cd(&|x| sinh_q(x, &d).unwrap()), c),
                (cd(&|x| cosh_q(x, &d).unwrap()), s),
                (cd(&|x| tanh_q(x, &d).unwrap()), q / (c * c)),
                (cd(&|x| coth_q(x, &d).unwrap()), -q / (s * s)),
            ];
            for (j, (num, exact)) in checks.iter().enumerate() {
                let err = (num - exact).abs() / exact.abs().max(1e-3);
                worst_d = worst_d.max(err);
                if err > 1e-6 {
                    fails.push(format!("derivative {j} q={q} x={x}: {err:e}"));
                }
            }
        }
    }
    verdict(fails, format!("worst identity {worst_id:.1e}, worst derivative {worst_d:.1e}"))
}

fn c2_q_reduction() -> Verdict {
    let mut fails = Vec::new();
    let mut worst = 0.0f64;
    let mut checked = 0;
    for kind in CLOSED_KINDS {
        for point in catalog(kind) {
            for q in [0.25, 0.5, 2.0, 4.0] {
                let spec = point.spec.with_q(q).unwrap();
                match q_reduction_check(&spec, 1e-12) {
                    Ok(r) => {
                        checked += 1;
                        worst = worst.max(r.max_abs_diff);
                        if !r.passed {
                            fails.push(format!("{} q={q}: {}", point.label, r.detail));
                        }
                    }
                    Err(e) => fails.push(format!("{} q={q}: {e}", point.label)),
                }
            }
        }
    }
    verdict(fails, format!("{checked} spec/q pairs, worst |dE| {worst:.1e}"))
}

fn c3_textbook() -> Verdict {
    let spec = v1(2.5, 1.0);
    let levels = spectrum(&spec).unwrap().energies();
    let mut fails = Vec::new();
    if levels != [-4.0, -1.0] {
        fails.push(format!("closed form gave {levels:?}"));
    }
    let refined = GridProblem::for_spec(&spec, 6000).unwrap().refine(2).unwrap();
    let errs: Vec<f64> = refined.extrapolated.iter().zip([-4.0, -1.0]).map(|(a, b)| (a - b).abs()).collect();
    if errs.iter().any(|e| *e > 1e-6) {
        fails.push(format!("oracle {:?}", refined.extrapolated));
    }
    verdict(fails, format!("{{-4, -1}} exactly; oracle errors {:.1e}, {:.1e}", errs[0], errs[1]))
}

fn c4_oracle_sweep() -> Verdict {
    let mut fails = Vec::new();
    let (mut judged, mut worst_raw, mut worst_ext) = (0, 0.0f64, 0.0f64);
    for kind in Kind::ALL {
        let points = catalog(kind);
        if points.is_empty() {
            continue;
        }
        if points.len() < 3 {
            fails.push(format!("{kind}: only {} catalog points", points.len()));
        }
        for p in points {
            let r = match verify_spec(&p.spec, &VerifyOptions::default()) {
                Ok(r) => r,
                Err(e) => {
                    fails.push(format!("{}: {e}", p.label));
                    continue;
                }
            };
            if r.rows.is_empty() {
                fails.push(format!("{}: no levels", p.label));
            }
            for row in r.rows.iter().filter(|r| !r.near_threshold) {
                judged += 1;
                worst_raw = worst_raw.max(row.delta);
                worst_ext = worst_ext.max(row.delta_extrapolated);
                if row.delta >= 1e-4 || row.delta_extrapolated >= 1e-6 {
                    fails.push(format!("{} n={}: raw {:.1e} extrapolated {:.1e}", p.label, row.n, row.delta, row.delta_extrapolated));
                }
            }
        }
    }
    verdict(fails, format!("{judged} levels, worst raw {worst_raw:.1e}, worst extrapolated {worst_ext:.1e}"))
}

fn c5a_level_counts() -> Verdict {
    let mut fails = Vec::new();
    let mut n = 0;
    for kind in CLOSED_KINDS {
        for p in catalog(kind) {
            let s = spectrum(&p.spec).unwrap();
            let grid = oracle_grid(&p.spec, &s.energies(), &VerifyOptions::default()).unwrap();
            let count = grid.count_below(s.threshold).unwrap();
            n += 1;
            if count != s.len() {
                fails.push(format!("{}: oracle {count} vs closed form {}", p.label, s.len()));
            }
        }
    }
    verdict(fails, format!("{n} catalog points agree"))
}

/// Closed-form level counts along a q-grid.
fn counts(spec: &PotentialSpec, qs: &[f64]) -> Vec<usize> {
    qs.iter().map(|&q| spectrum(&spec.with_q(q).unwrap()).map_or(0, |s| s.len())).collect()
}

fn trend(counts: &[usize]) -> bool {
    counts.windows(2).all(|w| w[1] >= w[0]) && counts.last() > counts.first()
}

fn c5b_v3_trend() -> Verdict {
    // attractive wall (lambda < 1/2): here 0 < q < 1 lowers s = 2 lambda~
    let spec = PotentialSpec::natural(Kind::V3, Params::V3 { alpha: 16.0, lambda: 0.4 }, 1.0).unwrap();
    let qs = [1.0, 0.8, 0.6, 0.5, 0.4];
    let c = counts(&spec, &qs);
    let repulsive = PotentialSpec::natural(Kind::V3, Params::V3 { alpha: 20.0, lambda: 1.5 }, 1.0).unwrap();
    let r = counts(&repulsive, &qs);
    let detail = format!("lambda=0.4: q {qs:?} -> counts {c:?} (lambda=1.5 gives {r:?})");
    Verdict { pass: trend(&c), detail }
}

fn c5c_v4_trend() -> Verdict {
    let qs = [1.0, 1.5, 2.0, 3.0, 4.0];
    let mut all = Vec::new();
    let mut pass = true;
    for lambda in [1.5, 3.5, 6.0] {
        let spec = PotentialSpec::natural(Kind::V4, Params::V4 { beta: 1.0, lambda }, 1.0).unwrap();
        let c = counts(&spec, &qs);
        pass &= trend(&c);
        all.push(format!("lambda={lambda}: {c:?}"));
    }
    Verdict { pass, detail: format!("q {qs:?} -> counts {}; count falls as q grows", all.join(", ")) }
}

fn c6_v7_cubic() -> Verdict {
    let mut fails = Vec::new();
    let (mut worst_res, mut worst_rec, mut levels) = (0.0f64, 0.0f64, 0);
    for p in catalog(Kind::V7) {
        let ls = match v7_levels(&p.spec) {
            Ok(l) => l,
            Err(e) => {
                fails.push(format!("{}: {e}", p.label));
                continue;
            }
        };
        if ls.is_empty() {
            fails.push(format!("{}: no levels", p.label));
        }
        for l in ls {
            levels += 1;
            let eps = l.energy / p.spec.kappa();
            let res = v7_condition(&p.spec, eps, l.n).unwrap().map_or(f64::INFINITY, f64::abs);
            worst_res = worst_res.max(res);
            if res >= V7_FILTER_TOL {
                fails.push(format!("{} n={}: residual {res:e}", p.label, l.n));
            }
            if l.passing != 1 {
                fails.push(format!("{} n={}: {} roots pass", p.label, l.n, l.passing));
            }
            let c = l.cubic.coefficients;
            let (s, t, d) = c.reconstruct();
            let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
            let rec = rel(s, c.s).max(rel(t, c.t)).max(rel(d, c.d));
            worst_rec = worst_rec.max(rec);
            if rec > 1e-12 {
                fails.push(format!("{} n={}: reconstruction {rec:e}", p.label, l.n));
            }
        }
    }
    verdict(fails, format!("{levels} levels, worst residual {worst_res:.1e}, worst reconstruction {worst_rec:.1e}"))
}

fn c7_v8() -> Verdict {
    let mut fails = Vec::new();
    let (mut worst_cond, mut worst_orc, mut worst_wall) = (0.0f64, 0.0f64, 0.0f64);
    for p in catalog(Kind::V8) {
        let s = spectrum(&p.spec).unwrap();
        if s.is_empty() {
            fails.push(format!("{}: no roots", p.label));
        }
        for l in &s.levels {
            let c = v8_condition(&p.spec, l.energy).unwrap().abs();
            worst_cond = worst_cond.max(c);
            if c >= 1e-10 {
                fails.push(format!("{} n={}: condition {c:e}", p.label, l.n));
            }
        }
        let r = verify_spec(&p.spec, &VerifyOptions::default()).unwrap();
        for row in r.rows.iter().filter(|r| !r.near_threshold) {
            worst_orc = worst_orc.max(row.delta);
            if row.delta >= 1e-4 {
                fails.push(format!("{} n={}: oracle {:.1e}", p.label, row.n, row.delta));
            }
        }
        let shift = p.spec.deformation().shift();
        let e = C64::new(s.threshold - 0.37, 0.0);
        let e = if s.energies().iter().any(|l| (l - e.re).abs() < 1e-3) { e + 0.05 } else { e };
        let inner = green(&p.spec, shift + 1.0, shift + 1.0, e).unwrap().norm();
        let wall = green(&p.spec, shift + 1e-13, shift + 1.0, e).unwrap().norm();
        worst_wall = worst_wall.max(wall / inner);
        if wall >= 1e-8 * inner {
            fails.push(format!("{}: wall ratio {:e}", p.label, wall / inner));
        }
    }
    verdict(fails, format!("worst condition {worst_cond:.1e}, worst oracle {worst_orc:.1e}, worst wall ratio {worst_wall:.1e}"))
}

fn c8_wavefunctions() -> Verdict {
    let mut fails = Vec::new();
    let (mut worst_gram, mut worst_res, mut worst_ovl, mut states_n) = (0.0f64, 0.0f64, 0.0f64, 0);
    for kind in CLOSED_KINDS {
        for p in catalog(kind) {
            let states = match bound_states(&p.spec) {
                Ok(s) => s,
                Err(e) => {
                    fails.push(format!("{}: {e}", p.label));
                    continue;
                }
            };
            let g = gram_matrix(&states).unwrap();
            for (i, row) in g.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    let dev = (v - if i == j { 1.0 } else { 0.0 }).abs();
                    worst_gram = worst_gram.max(dev);
                    if dev >= 1e-6 {
                        fails.push(format!("{}: gram[{i}][{j}] off by {dev:e}", p.label));
                    }
                }
            }
            let shift = p.spec.deformation().shift();
            let levels = spectrum(&p.spec).unwrap().energies();
            let auto = oracle_grid(&p.spec, &levels, &VerifyOptions::default()).unwrap();
            // overlap on a coarser grid over the same window
            let points = ((auto.x_max - auto.x_min) / 5e-3) as usize + 1;
            let grid = auto.with_points(points).unwrap();
            for st in &states {
                states_n += 1;
                if st.nodes != st.n as usize {
                    fails.push(format!("{} n={}: {} nodes", p.label, st.n, st.nodes));
                }
                let h = 1e-3;
                // central differences cannot follow psi ~ y^s through the 1/y^2 wall;
                // keep the stencil 50 steps clear of it
                let lo = if kind.is_half_line() { st.window.0 + 50.0 * h } else { st.window.0 };
                let res = st.hamiltonian_residual(lo, st.window.1, h).unwrap();
                worst_res = worst_res.max(res);
                if res >= 1e-4 {
                    fails.push(format!("{} n={}: residual {res:e}", p.label, st.n));
                }
                let ev = grid.eigenvector(st.n as usize).unwrap();
                let analytic: Vec<f64> = ev.x.iter().map(|y| st.psi(y + shift).unwrap()).collect();
                let dot: f64 = analytic.iter().zip(&ev.psi).map(|(a, b)| a * b).sum();
                let na: f64 = analytic.iter().map(|a| a * a).sum::<f64>().sqrt();
                let no: f64 = ev.psi.iter().map(|a| a * a).sum::<f64>().sqrt();
                let ovl = 1.0 - (dot / (na * no)).abs();
                worst_ovl = worst_ovl.max(ovl);
                if ovl >= 1e-6 {
                    fails.push(format!("{} n={}: 1 - overlap {ovl:e}", p.label, st.n));
                }
            }
        }
    }
    verdict(
        fails,
        format!("{states_n} states, worst gram {worst_gram:.1e}, worst residual {worst_res:.1e}, worst 1-overlap {worst_ovl:.1e}"),
    )
}

fn c9_poles() -> Verdict {
    let mut fails = Vec::new();
    let (mut n, mut worst) = (0, 0.0f64);
    for kind in CLOSED_KINDS {
        for p in catalog(kind) {
            let levels = spectrum(&p.spec).unwrap().energies();
            let poles = pole_scan(&p.spec, default_scan_window(&p.spec).unwrap(), 3000).unwrap();
            if poles.len() != levels.len() {
                fails.push(format!("{}: {} poles vs {} levels", p.label, poles.len(), levels.len()));
                continue;
            }
            for (a, b) in levels.iter().zip(&poles) {
                n += 1;
                worst = worst.max((a - b).abs());
                if (a - b).abs() >= 1e-8 {
                    fails.push(format!("{}: level {a} pole {b}", p.label));
                }
            }
        }
    }
    verdict(fails, format!("{n} poles, worst |dE| {worst:.1e}"))
}

fn c10_special_functions() -> Verdict {
    let mut fails = Vec::new();
    let mut check = |what: &str, got: f64, want: f64, tol: f64| {
        let err = (got - want).abs() / want.abs().max(1.0);
        if err >= tol {
            fails.push(format!("{what}: {got} vs {want} ({err:e})"));
        }
    };
    check("gamma(5)", gamma_real(5.0).unwrap(), 24.0, 1e-13);
    check("gamma(1/2)", gamma_real(0.5).unwrap(), std::f64::consts::PI.sqrt(), 1e-13);
    let r = |v: f64| C64::new(v, 0.0);
    for z in [-0.9, -0.3, 0.2, 0.45, 0.7, 0.95] {
        for (a, b) in [(0.3, 1.7), (-2.5, 0.4), (1.25, 3.0)] {
            let f = hyp2f1(r(a), r(b), r(b), r(z)).unwrap();
            check(&format!("2F1({a},{b};{b};{z})"), f.re, (1.0 - z).powf(-a), 1e-12);
        }
        let f = hyp2f1(r(1.0), r(1.0), r(2.0), r(-z)).unwrap();
        check(&format!("z 2F1(1,1;2;-z) at {z}"), z * f.re, z.ln_1p(), 1e-12);
    }
    for n in 0..8u32 {
        for x in [-0.95, -0.4, 0.0, 0.33, 0.8] {
            let jac = jacobi_p(&JacobiArgs { n, alpha: r(0.0), beta: r(0.0), x: r(x) }).unwrap().re;
            let leg = legendre_p(&LegendreArgs { nu: r(n as f64), mu: r(0.0), x }).unwrap().re;
            check(&format!("P_{n}^(0,0)({x}) vs P_{n}({x})"), jac, leg, 1e-10);
        }
    }
    verdict(fails, "gamma, 2F1 binomial and log identities, Jacobi-Legendre".into())
}

fn main() {
    let criteria: Vec<(&str, &str, fn() -> Verdict)> = vec![
        ("1", "deformation algebra", c1_deformation_algebra),
        ("2", "q-reduction identity", c2_q_reduction),
        ("3", "textbook sech^2 anchor", c3_textbook),
        ("4", "oracle agreement sweep", c4_oracle_sweep),
        ("5a", "level counts vs oracle", c5a_level_counts),
        ("5b", "V3 count grows as q falls below 1", c5b_v3_trend),
        ("5c", "V4 count grows as q rises above 1", c5c_v4_trend),
        ("6", "V7 cubic", c6_v7_cubic),
        ("7", "V8 transcendental", c7_v8),
        ("8", "wave functions", c8_wavefunctions),
        ("9", "Green-function poles", c9_poles),
        ("10", "special functions", c10_special_functions),
    ];
    let mut unexpected = Vec::new();
    let mut total = Duration::ZERO;
    for (id, name, run) in criteria {
        let start = Instant::now();
        let v = run();
        let took = start.elapsed();
        total += took;
        let tag = if v.pass { "PASS" } else { "FAIL" };
        let known = !v.pass && KNOWN_RED.contains(&id);
        println!(
            "{tag} [{id:>3}] {name} ({:.2} s): {}{}",
            took.as_secs_f64(),
            v.detail,
            if known { " [known red]" } else { "" }
        );
        if !v.pass && !known {
            unexpected.push(id);
        }
    }
    println!("acceptance total {:.1} s", total.as_secs_f64());
    if !unexpected.is_empty() {
        eprintln!("unexpected failures: {unexpected:?}");
        std::process::exit(1);
    }
}
