//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero when any criterion fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::*;
use gabor_core::algebra::{
    index_commutative, janssen_coefficients, kernel_basis, project_onto, represent,
    twisted_convolve, twisted_invert,
};
use gabor_core::diagnostics::{
    biorthogonality_residual, check_all_conditions, frame_bounds, modulation_norm_proxy,
    reconstruction_error, wexler_raz_constant, wexler_raz_dual, NormOrder,
};
use gabor_core::gallery::{
    alternating_kernel_probe, gaussian_alternating_kernel_probe, make_window,
    partition_of_unity_kernel, WindowRecipe,
};
use gabor_core::lattice::divisors;
use gabor_core::linalg::{mat_vec, max_abs_diff, norm2, CMatrix};
use gabor_core::ops::{
    ambiguity_sequence, coefficient_map, frame_operator_matrix, gramian_matrix, synthesis_map,
    LatticeSequence,
};
use gabor_core::{FiniteModel, SeparableLattice, Tolerance, Window};
use num_complex::Complex64;

type Outcome = std::result::Result<String, String>;

const TRIAL_LATTICES: [(usize, usize, usize); 3] = [(8, 2, 2), (12, 3, 4), (16, 4, 4)];

fn check(ok: bool, detail: String) -> Outcome {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn homomorphism() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut r = rng(1);
    for (len, a, b) in TRIAL_LATTICES {
        let lat = lattice(len, a, b);
        for _ in 0..100 {
            let x = random_sequence(&mut r, lat);
            let y = random_sequence(&mut r, lat);
            let (px, py) = (represent(&x), represent(&y));
            let lhs = represent(&twisted_convolve(&x, &y).unwrap());
            let rel = frob(&(lhs - &px * &py)) / (frob(&px) * frob(&py));
            worst = worst.max(rel);
        }
    }
    check(
        worst <= 1e-12,
        format!("worst relative Frobenius error {worst:.2e} (limit 1e-12)"),
    )
}

fn adjointness() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut r = rng(2);
    for (len, a, b) in TRIAL_LATTICES {
        let lat = lattice(len, a, b);
        let g = random_window(&mut r, len);
        for _ in 0..100 {
            let f = unit_vec(&mut r, len);
            let c = LatticeSequence::new(lat, unit_vec(&mut r, lat.cardinality())).unwrap();
            let cf = coefficient_map(&g, &lat, &f).unwrap();
            let dc = synthesis_map(&g, &lat, &c).unwrap();
            let lhs = gabor_core::linalg::inner(cf.values(), c.values());
            let rhs = gabor_core::linalg::inner(&f, &dc);
            worst = worst.max((lhs - rhs).norm());
        }
    }
    check(
        worst <= 1e-12,
        format!("worst |<Cf,c> - <f,Dc>| = {worst:.2e} (limit 1e-12)"),
    )
}

fn janssen() -> Outcome {
    let lattices = [(8, 2, 2), (12, 3, 4), (16, 2, 4), (24, 4, 3), (18, 3, 2)];
    let mut worst: f64 = 0.0;
    let mut r = rng(3);
    for (len, a, b) in lattices {
        let lat = lattice(len, a, b);
        for _ in 0..10 {
            let g = random_window(&mut r, len);
            let s = frame_operator_matrix(&g, &lat).unwrap();
            let series = represent(&janssen_coefficients(&g, &lat).unwrap());
            worst = worst.max(frob(&(&s - series)) / frob(&s));
        }
    }
    let len = 16;
    let full = lattice(len, 1, 1);
    let g = random_window(&mut r, len);
    let s = frame_operator_matrix(&g, &full).unwrap();
    let full_err = max_abs_diff(
        &s,
        &(CMatrix::identity(len, len) * Complex64::new(len as f64, 0.0)),
    );
    check(
        worst <= 1e-12 && full_err <= 1e-12,
        format!("worst relative residual {worst:.2e}, full lattice |S - L I| = {full_err:.2e} (limit 1e-12)"),
    )
}

fn gramian_twisted() -> Outcome {
    let mut worst: f64 = 0.0;
    let mut r = rng(4);
    for (len, a, b) in TRIAL_LATTICES {
        let lat = lattice(len, a, b);
        for _ in 0..100 {
            let g = random_window(&mut r, len);
            let gm = gramian_matrix(&g, &lat).unwrap();
            let amb = ambiguity_sequence(&g, &lat).unwrap();
            let c = LatticeSequence::new(lat, unit_vec(&mut r, lat.cardinality())).unwrap();
            let lhs = mat_vec(&gm, c.values());
            let rhs = twisted_convolve(&c, &amb).unwrap();
            worst = worst.max(dist(&lhs, rhs.values()));
        }
    }
    check(
        worst <= 1e-12,
        format!("worst ||G c - c # a|| = {worst:.2e} (limit 1e-12)"),
    )
}

/// One (window, lattice) trial of the consistency sweep.
struct Trial {
    g: Window,
    lattice: SeparableLattice,
}

fn consistency_trials() -> Vec<Trial> {
    let redundancies = [0.5, 1.0, 1.5, 2.0, 4.0];
    let mut out = Vec::new();
    for len in [8usize, 12, 16, 18, 24, 32, 36, 48] {
        let model = FiniteModel::new(len).unwrap();
        let width = divisors(len)
            .into_iter()
            .filter(|&w| 2 * w <= len / 2)
            .max()
            .unwrap_or(1);
        let mut recipes = vec![
            WindowRecipe::Delta,
            WindowRecipe::PeriodizedGaussian,
            WindowRecipe::Bspline { order: 2, width },
        ];
        recipes.extend((0..3).map(|k| WindowRecipe::Random {
            seed: 1000 * len as u64 + k,
        }));
        let windows: Vec<Window> = recipes
            .iter()
            .map(|rc| make_window(rc, &model).unwrap())
            .collect();
        for a in divisors(len) {
            for b in divisors(len) {
                let red = len as f64 / (a * b) as f64;
                if !redundancies.iter().any(|&x| (x - red).abs() < 1e-12) {
                    continue;
                }
                let lat = SeparableLattice::new(model, a, b).unwrap();
                out.extend(windows.iter().map(|g| Trial {
                    g: g.clone(),
                    lattice: lat,
                }));
            }
        }
    }
    out
}

struct SweepResult {
    total: usize,
    marginal: usize,
    inconsistent: Vec<String>,
    frames: Vec<Trial>,
    commutative: Vec<(Trial, bool)>,
}

fn run_sweep(tol: &Tolerance) -> SweepResult {
    let trials = consistency_trials();
    let mut res = SweepResult {
        total: trials.len(),
        marginal: 0,
        inconsistent: Vec::new(),
        frames: Vec::new(),
        commutative: Vec::new(),
    };
    for t in trials {
        let v = check_all_conditions(&t.g, &t.lattice, tol).unwrap();
        if v.marginal {
            res.marginal += 1;
            continue;
        }
        let name = format!(
            "L={} a={} b={} {}",
            t.lattice.len(),
            t.lattice.time_step(),
            t.lattice.freq_step(),
            t.g.label()
        );
        match v.frame() {
            None => res.inconsistent.push(name),
            Some(frame) => {
                if t.lattice.adjoint().is_commutative() {
                    res.commutative.push((
                        Trial {
                            g: t.g.clone(),
                            lattice: t.lattice,
                        },
                        frame,
                    ));
                }
                if frame {
                    res.frames.push(t);
                }
            }
        }
    }
    res
}

fn theorem_consistency(s: &SweepResult) -> Outcome {
    let share = s.marginal as f64 / s.total as f64;
    let detail = format!(
        "{} pairs, {} inconsistent, {} marginal ({:.1}%), {} frames{}",
        s.total,
        s.inconsistent.len(),
        s.marginal,
        100.0 * share,
        s.frames.len(),
        s.inconsistent
            .first()
            .map(|n| format!(", first: {n}"))
            .unwrap_or_default()
    );
    check(
        s.total >= 500 && s.inconsistent.is_empty() && share < 0.05,
        detail,
    )
}

fn wexler_raz(s: &SweepResult, tol: &Tolerance) -> Outcome {
    let mut r = rng(6);
    let (mut bio, mut rec): (f64, f64) = (0.0, 0.0);
    for t in &s.frames {
        let dual = wexler_raz_dual(&t.g, &t.lattice, tol).unwrap();
        assert_eq!(
            dual.biorthogonality_constant,
            wexler_raz_constant(&t.lattice)
        );
        bio = bio.max(biorthogonality_residual(&dual.samples, &t.g, &t.lattice).unwrap());
        let f = random_vec(&mut r, t.lattice.len());
        rec = rec.max(reconstruction_error(&dual.samples, &t.g, &t.lattice, &f).unwrap());
    }
    check(
        bio <= 1e-10 && rec <= 1e-10 && !s.frames.is_empty(),
        format!(
            "{} frames, biorthogonality {bio:.2e}, reconstruction {rec:.2e} (limit 1e-10)",
            s.frames.len()
        ),
    )
}

fn wiener(s: &SweepResult, tol: &Tolerance) -> Outcome {
    let (mut unit, mut inv): (f64, f64) = (0.0, 0.0);
    let mut failing_conds = Vec::new();
    for t in &s.frames {
        let a = janssen_coefficients(&t.g, &t.lattice).unwrap();
        let b = twisted_invert(&a, tol).unwrap();
        let delta = LatticeSequence::delta(*a.lattice());
        let mut case_unit: f64 = 0.0;
        for prod in [
            twisted_convolve(&a, &b).unwrap(),
            twisted_convolve(&b, &a).unwrap(),
        ] {
            case_unit = case_unit.max(dist(prod.values(), delta.values()));
        }
        let s_inv = frame_operator_matrix(&t.g, &t.lattice)
            .unwrap()
            .try_inverse()
            .unwrap();
        let scale = s_inv.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let case_inv = max_abs_diff(&represent(&b), &s_inv) / scale;
        if case_unit > 1e-10 || case_inv > 1e-9 {
            let cond = frame_bounds(&t.g, &t.lattice, tol)
                .unwrap()
                .condition_number
                .unwrap_or(f64::INFINITY);
            failing_conds.push(cond);
        }
        unit = unit.max(case_unit);
        inv = inv.max(case_inv);
    }
    let cond_range = match failing_conds.iter().copied().reduce(f64::min) {
        Some(lo) => format!(
            ", {} cases over the limit with cond(S) in [{lo:.1e}, {:.1e}]",
            failing_conds.len(),
            failing_conds.iter().copied().fold(0.0, f64::max)
        ),
        None => String::new(),
    };
    check(
        failing_conds.is_empty(),
        format!(
            "{} frames, |a#b - d| and |b#a - d| {unit:.2e} (limit 1e-10), represent(b) vs S^-1 {inv:.2e} (limit 1e-9){cond_range}",
            s.frames.len()
        ),
    )
}

fn read_ladder_fixture() -> Vec<(usize, f64, f64)> {
    include_str!("fixtures/alternating_ladder.tsv")
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (
                f[0].parse().unwrap(),
                f[1].parse().unwrap(),
                f[2].parse().unwrap(),
            )
        })
        .collect()
}

fn ladder() -> Outcome {
    let fixture = read_ladder_fixture();
    let mut ratios = Vec::new();
    let mut controls = Vec::new();
    let mut fixture_err: f64 = 0.0;
    for &(len, gauss, delta) in &fixture {
        let model = FiniteModel::new(len).unwrap();
        let p = gaussian_alternating_kernel_probe(len).unwrap();
        let d = make_window(&WindowRecipe::Delta, &model).unwrap();
        let pd = alternating_kernel_probe(&d, len).unwrap();
        fixture_err = fixture_err
            .max((p.ratio - gauss).abs())
            .max((pd.ratio - delta).abs());
        ratios.push(p.ratio);
        controls.push(pd.ratio);
    }
    let decreasing = ratios.windows(2).all(|w| w[1] < w[0]);
    let control_ok = controls.iter().all(|&c| c > 0.1);
    let fmt = |v: &[f64]| {
        v.iter()
            .map(|x| format!("{x:.1e}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    check(
        decreasing && control_ok && fixture_err <= 1e-9,
        format!(
            "r = [{}] strictly decreasing: {decreasing}; delta control = [{}] above 0.1: {control_ok}; fixture error {fixture_err:.1e}",
            fmt(&ratios),
            fmt(&controls)
        ),
    )
}

/// The partition-of-unity cases: (window, period, blocks).
fn pou_cases() -> Vec<(Window, usize, usize)> {
    let mk = |len: usize, order: usize, width: usize| {
        make_window(
            &WindowRecipe::Bspline { order, width },
            &FiniteModel::new(len).unwrap(),
        )
        .unwrap()
    };
    vec![
        (mk(16, 1, 4), 4, 2),
        (mk(16, 1, 4), 4, 4),
        (mk(24, 2, 4), 4, 2),
        (mk(36, 2, 6), 6, 3),
    ]
}

fn pou_exactness(tol: &Tolerance) -> Outcome {
    let mut worst: f64 = 0.0;
    let mut all_false = true;
    let mut min_index = usize::MAX;
    for (g, period, blocks) in pou_cases() {
        let k = partition_of_unity_kernel(&g, period, blocks, 1).unwrap();
        let dc = synthesis_map(&g, &k.adjoint, &k.sequence).unwrap();
        worst = worst.max(norm2(&dc) / k.sequence.norm2());
        all_false &= check_all_conditions(&g, &k.lattice, tol)
            .unwrap()
            .all(false);
        min_index = min_index.min(index_commutative(&g, &k.adjoint, tol).unwrap().index);
    }
    check(
        worst <= 1e-12 && all_false && min_index >= 1,
        format!("residual {worst:.2e} (limit 1e-12), all conditions false: {all_false}, smallest index {min_index}"),
    )
}

fn index_frame(s: &SweepResult, tol: &Tolerance) -> Outcome {
    let mut cases: Vec<(Window, SeparableLattice, bool)> = s
        .commutative
        .iter()
        .map(|(t, f)| (t.g.clone(), t.lattice, *f))
        .collect();
    for (g, period, blocks) in pou_cases() {
        let k = partition_of_unity_kernel(&g, period, blocks, 1).unwrap();
        cases.push((g, k.lattice, false));
    }
    let mut exceptions = 0;
    for (g, lat, frame) in &cases {
        let idx = index_commutative(g, &lat.adjoint(), tol).unwrap();
        if (idx.index == 0) != *frame {
            exceptions += 1;
        }
    }
    check(
        exceptions == 0,
        format!("{} commutative cases, {exceptions} exceptions", cases.len()),
    )
}

fn module_closure(tol: &Tolerance) -> Outcome {
    let mut r = rng(11);
    let mut worst: f64 = 0.0;
    let mut kernels = 0;
    for (g, period, blocks) in pou_cases() {
        let k = partition_of_unity_kernel(&g, period, blocks, 1).unwrap();
        let basis = kernel_basis(&g, &k.adjoint, tol).unwrap();
        if basis.is_empty() {
            continue;
        }
        kernels += 1;
        for _ in 0..20 {
            let mut a = random_sequence(&mut r, k.adjoint);
            let n1 = a.norm1();
            a.values_mut().iter_mut().for_each(|z| *z /= n1);
            for e in &basis {
                let moved = twisted_convolve(&a, e).unwrap();
                let proj = project_onto(&basis, &moved);
                worst = worst.max(dist(moved.values(), proj.values()));
            }
        }
    }
    check(
        kernels > 0 && worst <= 1e-10,
        format!("{kernels} kernels, worst distance from span {worst:.2e} (limit 1e-10)"),
    )
}

fn stft_identity() -> Outcome {
    let mut r = rng(12);
    let mut worst: f64 = 0.0;
    let lens = [4usize, 8, 16, 25, 32, 48, 64];
    for i in 0..100 {
        let len = lens[i % lens.len()];
        let f = random_vec(&mut r, len);
        let proxy = modulation_norm_proxy(&f, NormOrder::Two).unwrap();
        worst = worst.max((proxy - (len as f64).sqrt() * norm2(&f)).abs());
    }
    check(
        worst <= 1e-10,
        format!("worst deviation {worst:.2e} (limit 1e-10)"),
    )
}

fn main() -> ExitCode {
    let start = Instant::now();
    let tol = Tolerance::default();
    let sweep = run_sweep(&tol);
    let results: Vec<(&str, Outcome)> = vec![
        ("homomorphism of the shift representation", homomorphism()),
        ("adjointness of C and D", adjointness()),
        ("Janssen representation of S", janssen()),
        ("Gramian equals twisted convolution", gramian_twisted()),
        (
            "fourteen-condition consistency",
            theorem_consistency(&sweep),
        ),
        (
            "Wexler-Raz biorthogonality and reconstruction",
            wexler_raz(&sweep, &tol),
        ),
        (
            "Wiener inversion in the twisted algebra",
            wiener(&sweep, &tol),
        ),
        ("critical Gaussian alternating ladder", ladder()),
        ("partition-of-unity kernel exactness", pou_exactness(&tol)),
        (
            "index zero iff frame (commutative)",
            index_frame(&sweep, &tol),
        ),
        ("kernel module closure", module_closure(&tol)),
        ("STFT norm identity", stft_identity()),
    ];
    let mut failed = 0;
    for (i, (name, outcome)) in results.iter().enumerate() {
        let (tag, detail) = match outcome {
            Ok(d) => ("PASS", d),
            Err(d) => {
                failed += 1;
                ("FAIL", d)
            }
        };
        println!("{tag} [{:>2}] {name}: {detail}", i + 1);
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        results.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
