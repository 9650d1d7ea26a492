//! Acceptance harness: runs every acceptance criterion at its stated
//! tolerance and runtime budget, printing one `[PASS]`/`[FAIL]` line each.
//! Exits non-zero if any criterion fails.

#[path = "../../core/tests/support/oracles.rs"]
mod oracles;

use std::f64::consts::PI;
use std::io::Write;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use signlab_core::lfun::zeta_moment;
use signlab_core::maass::MaassRestriction;
use signlab_core::restriction::FnSegment;
use signlab_core::{
    bessel_k_scaled, certify, count_sign_changes, eisenstein_eval, eisenstein_l, m_p_norm,
    zeta_complex, CPolicy, Complex64, EisensteinConfig, EisensteinContext, EisensteinRestriction,
    GeodesicSegment, MaassEvaluator, MaassFormRecord, Measure, PrecisionPolicy, QuadratureConfig,
    Sample, SegmentFunction,
};

type Check = std::result::Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn minutes(m: u64) -> Duration {
    Duration::from_secs(60 * m)
}

fn main() {
    let criteria = [
        Criterion { id: 1, name: "lattice-sum oracle at s = 2", budget: minutes(2), run: lattice_sum },
        Criterion { id: 2, name: "modular invariance", budget: minutes(5), run: modular_invariance },
        Criterion { id: 3, name: "sign field at t = 14", budget: minutes(10), run: sign_field },
        Criterion { id: 4, name: "growth of K(t) on i[1,2]", budget: minutes(30), run: growth },
        Criterion { id: 5, name: "M2 lower-bound trend", budget: minutes(30), run: m2_trend },
        Criterion { id: 6, name: "J decay at eta = 0.05", budget: minutes(20), run: j_decay },
        Criterion { id: 7, name: "certificate soundness on trig polynomials", budget: minutes(5), run: soundness },
        Criterion { id: 8, name: "certificate vs count at t = 100", budget: minutes(10), run: certificate_vs_count },
        Criterion { id: 9, name: "L-identity at nu = 5/2", budget: minutes(2), run: l_identity },
        Criterion { id: 10, name: "zeta moments", budget: minutes(60), run: zeta_moments },
        Criterion { id: 11, name: "Bessel kernel", budget: minutes(1), run: bessel_kernel },
        Criterion { id: 12, name: "Maass pipeline", budget: minutes(5), run: maass_pipeline },
    ];
    let selected: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    let mut ran = 0;
    for c in criteria.iter().filter(|c| selected.is_empty() || selected.contains(&c.id)) {
        ran += 1;
        let start = Instant::now();
        let result = (c.run)();
        let dt = start.elapsed();
        let (ok, mut detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        let in_budget = dt <= c.budget;
        if !in_budget {
            detail.push_str(&format!("; runtime over budget of {}s", c.budget.as_secs()));
        }
        let pass = ok && in_budget;
        failed += usize::from(!pass);
        println!(
            "[{}] {:02} {}: {} ({:.1}s)",
            if pass { "PASS" } else { "FAIL" },
            c.id,
            c.name,
            detail,
            dt.as_secs_f64()
        );
        std::io::stdout().flush().ok();
    }
    println!("acceptance: {} of {} criteria passed", ran - failed, ran);
    if failed > 0 {
        std::process::exit(1);
    }
}

// ---------------------------------------------------------------- helpers

struct CliRun {
    code: i32,
    stdout: String,
    stderr: String,
}

fn cli(args: &[&str]) -> CliRun {
    let out = Command::new(env!("CARGO_BIN_EXE_signlab")).args(args).output().expect("spawn signlab");
    CliRun {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

/// Data rows of a CSV with a header line, split into cells.
fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(1).filter(|l| !l.is_empty()).map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

fn num(s: &str) -> f64 {
    s.parse().unwrap_or(f64::NAN)
}

/// `count=…` from the `signs` summary on stderr.
fn signs_count(stderr: &str) -> Option<usize> {
    stderr.split_whitespace().find_map(|w| w.strip_prefix("count=")).and_then(|v| v.parse().ok())
}

fn ensure(cond: bool, msg: String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg)
    }
}

fn critical(t: f64) -> std::result::Result<EisensteinContext, String> {
    EisensteinContext::critical(t, EisensteinConfig::default()).map_err(|e| e.to_string())
}

/// `E_t` itself (undoing the `y^{-1/2}` normalisation of the restriction).
struct Unnormalised<F>(F);

impl<F: SegmentFunction> SegmentFunction for Unnormalised<F> {
    fn eval(&self, y: f64) -> signlab_core::Result<Sample> {
        let s = self.0.eval(y)?;
        let r = y.sqrt();
        Ok(Sample { y, value: s.value * r, abs_error: s.abs_error * r * (1.0 + 4.0 * f64::EPSILON) + (s.value * r).abs() * 2.0 * f64::EPSILON })
    }
    fn domain(&self) -> (f64, f64) {
        self.0.domain()
    }
    fn frequency(&self) -> f64 {
        self.0.frequency()
    }
}

const SCAN_TS: [f64; 11] = [20.0, 30.0, 40.0, 50.0, 60.0, 70.0, 80.0, 90.0, 100.0, 110.0, 120.0];

// ---------------------------------------------------------------- criteria

fn lattice_sum() -> Check {
    let ctx = EisensteinContext::real(2.0, EisensteinConfig::default()).map_err(|e| e.to_string())?;
    let mut worst: f64 = 0.0;
    for (x, y) in [(0.0, 1.0), (0.5, 1.0), (0.3, 0.9)] {
        let v = eisenstein_eval(&ctx, Complex64::new(x, y)).map_err(|e| e.to_string())?;
        let o = oracles::lattice_sum(x, y, 2.0, 2000);
        worst = worst.max(((v.value.re - o) / o).abs());
    }
    let msg = format!("max relative error {worst:.2e} (limit 1e-6)");
    ensure(worst < 1e-6, msg.clone())?;
    Ok(msg)
}

fn modular_invariance() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    let mut worst_ratio: f64 = 0.0;
    let mut worst_bound: f64 = 0.0;
    for t in [2.0, 14.0, 50.0] {
        let ctx = critical(t)?;
        for _ in 0..20 {
            let z = Complex64::new(rng.gen_range(-0.5..0.5), rng.gen_range(0.87..2.0));
            let e = |w: Complex64| eisenstein_eval(&ctx, w).map_err(|e| format!("t = {t}, z = {w}: {e}"));
            let (a, b, c) = (e(z)?, e(-1.0 / z)?, e(z + 1.0)?);
            for (other, what) in [(b, "-1/z"), (c, "z+1")] {
                let diff = (a.value.re - other.value.re).abs();
                let allowed = 2.0 * (a.abs_error + other.abs_error);
                worst_ratio = worst_ratio.max(diff / allowed);
                worst_bound = worst_bound.max(a.abs_error.max(other.abs_error));
                ensure(diff <= allowed, format!("t = {t}, z = {z}, {what}: |diff| {diff:.2e} > {allowed:.2e}"))?;
            }
        }
    }
    ensure(worst_bound <= 1e-8, format!("error bound {worst_bound:.2e} exceeds 1e-8"))?;
    Ok(format!("60 points, max |diff|/(2·bounds) = {worst_ratio:.3}, max bound {worst_bound:.2e}"))
}

fn sign_field() -> Check {
    let g = cli(&["grid", "--t", "14", "--x-min", "-0.5", "--x-max", "0.5", "--y-min", "0.8", "--y-max", "2.5", "--nx", "200", "--ny", "200"]);
    ensure(g.code == 0, format!("grid exited {}: {}", g.code, g.stderr.trim()))?;
    let cells = rows(&g.stdout);
    ensure(cells.len() == 40_000, format!("grid has {} cells", cells.len()))?;
    let signs: Vec<i32> = cells.iter().map(|r| r[2].parse().unwrap_or(99)).collect();
    let (pos, neg) = (signs.iter().filter(|&&s| s == 1).count(), signs.iter().filter(|&&s| s == -1).count());
    ensure(pos > 0 && neg > 0, format!("signs present: +{pos} / -{neg}"))?;
    // Row-major in x within each y: cell (i, j) mirrors (199 - i, j).
    let mut asym = 0;
    for j in 0..200 {
        for i in 0..200 {
            let (a, b) = (&cells[j * 200 + i], &cells[j * 200 + 199 - i]);
            if num(&a[0]) != -num(&b[0]) || a[2] != b[2] {
                asym += 1;
            }
        }
    }
    ensure(asym == 0, format!("{asym} cells break the mirror symmetry"))?;
    let s = cli(&["signs", "--t", "14", "--x0", "0", "--a", "1", "--b", "2.5"]);
    ensure(s.code == 0, format!("signs exited {}: {}", s.code, s.stderr.trim()))?;
    let k = signs_count(&s.stderr).ok_or("no count in signs summary")?;
    ensure(k >= 1, "no certified sign change on x = 0, y in [1, 2.5]".into())?;
    Ok(format!("+{pos} / -{neg} cells, mirror-symmetric, {k} certified changes on x = 0"))
}

fn scan() -> std::result::Result<Vec<(f64, usize)>, String> {
    let s = cli(&["scan", "--t-min", "20", "--t-max", "120", "--t-step", "10", "--x0", "0", "--a", "1", "--b", "2"]);
    ensure(s.code == 0, format!("scan exited {}: {}", s.code, s.stderr.trim()))?;
    Ok(rows(&s.stdout).iter().map(|r| (num(&r[0]), r[1].parse().unwrap_or(0))).collect())
}

fn growth() -> Check {
    let k = scan()?;
    ensure(k.len() == SCAN_TS.len(), format!("scan returned {} rows", k.len()))?;
    let counts: Vec<usize> = k.iter().map(|r| r.1).collect();
    let n = k.len() as f64;
    let (mt, mk) = (k.iter().map(|r| r.0).sum::<f64>() / n, counts.iter().sum::<usize>() as f64 / n);
    let sxy: f64 = k.iter().map(|r| (r.0 - mt) * (r.1 as f64 - mk)).sum();
    let sxx: f64 = k.iter().map(|r| (r.0 - mt).powi(2)).sum();
    let slope = sxy / sxx;
    let mut running_max = 0usize;
    let mut drops = Vec::new();
    for r in &k {
        if r.1 + 1 < running_max {
            drops.push(r.0);
        }
        running_max = running_max.max(r.1);
    }
    let msg = format!("K = {counts:?}, slope {slope:.4} (want [0.15, 0.30]), drops beyond 1 at t = {drops:?}");
    ensure(drops.is_empty() && (0.15..=0.30).contains(&slope), msg.clone())?;
    Ok(msg)
}

fn m2_trend() -> Check {
    let seg = GeodesicSegment::imaginary_axis(1.0, 2.0, 0.0).map_err(|e| e.to_string())?;
    let mut ratios = Vec::new();
    for t in SCAN_TS {
        let f = Unnormalised(EisensteinRestriction::new(Arc::new(critical(t)?), seg));
        let m2 = m_p_norm(&f, (1.0, 2.0), 2.0, Measure::Hyperbolic, &QuadratureConfig::default())
            .map_err(|e| format!("t = {t}: {e}"))?;
        ratios.push(m2.value * m2.value / t.ln());
    }
    let floor = 0.5 * ratios[0];
    let shown: Vec<String> = ratios.iter().map(|r| format!("{r:.3}")).collect();
    let msg = format!("M2^2/log t = [{}], floor {floor:.3}", shown.join(", "));
    ensure(ratios.iter().all(|&r| r >= floor), msg.clone())?;
    Ok(msg)
}

fn j_decay() -> Check {
    let mut js = Vec::new();
    for t in ["25", "50", "100"] {
        let r = cli(&["jfun", "--t", t, "--eta", "0.05", "--x0", "0", "--a", "1", "--b", "2"]);
        ensure(r.code == 0, format!("jfun t = {t} exited {}: {}", r.code, r.stderr.trim()))?;
        js.push(num(&rows(&r.stdout)[0][1]));
    }
    let ratio = js[2] / js[0];
    let (lo, hi) = (0.5 * 0.5, 3.0 * 0.5);
    let msg = format!("J = {:.5}, {:.5}, {:.5}; J(100)/J(25) = {ratio:.4} in [{lo}, {hi}]", js[0], js[1], js[2]);
    ensure(js[0] > js[1] && js[1] > js[2] && ratio >= lo && ratio <= hi, msg.clone())?;
    Ok(msg)
}

fn soundness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7_000);
    let (mut issued, mut checked) = (0, 0);
    for i in 0..200 {
        let n_terms = rng.gen_range(1..=30);
        let lo = rng.gen_range(5.0..300.0);
        let p = oracles::TrigPoly {
            terms: (0..n_terms)
                .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(lo..lo + 200.0), rng.gen_range(0.0..2.0 * PI)))
                .collect(),
        };
        let n = rng.gen_range(2..=24);
        let eta = 1.0 / n as f64;
        let pc = p.clone();
        let f = FnSegment::new(move |y| pc.eval(y), (0.0, 1.0 + eta), p.max_freq());
        let c = certify(&f, (0.0, 1.0), n, CPolicy::default()).map_err(|e| format!("poly {i}: {e}"))?;
        checked += 1;
        if c.hypotheses_hold {
            issued += 1;
            let exact = oracles::exact_sign_changes(&p, 0.0, 1.0)
                .ok_or(format!("poly {i}: exact count unresolved"))?;
            ensure(c.lower_bound <= exact, format!("poly {i}: lower bound {} > exact {exact}", c.lower_bound))?;
        }
    }
    let constant = FnSegment::new(|_| 0.7, (0.0, 1.5), 1.0);
    let c = certify(&constant, (0.0, 1.0), 8, CPolicy::default()).map_err(|e| e.to_string())?;
    ensure(!c.hypotheses_hold && c.lower_bound == 0, "constant function received a certificate".into())?;
    Ok(format!("{checked} polynomials, {issued} certificates, 0 violations; constant: none issued"))
}

fn certificate_vs_count() -> Check {
    let c = cli(&["certify", "--t", "100", "--x0", "0", "--a", "1", "--b", "2", "--n", "25"]);
    ensure(c.code == 0 || c.code == 1, format!("certify exited {}: {}", c.code, c.stderr.trim()))?;
    let row = rows(&c.stdout).into_iter().next().ok_or("certify printed no row")?;
    let (j, threshold, holds, lower) = (num(&row[7]), num(&row[8]), row[9] == "true", row[10].parse::<usize>().unwrap_or(0));
    ensure(holds == (c.code == 0), "exit status disagrees with hypotheses_hold".into())?;
    let s = cli(&["signs", "--t", "100", "--x0", "0", "--a", "1", "--b", "2"]);
    ensure(s.code == 0, format!("signs exited {}: {}", s.code, s.stderr.trim()))?;
    let k = signs_count(&s.stderr).ok_or("no count in signs summary")?;
    ensure(!holds || lower <= k, format!("certified lower bound {lower} exceeds count {k}"))?;
    Ok(format!(
        "hypotheses {} (J = {j:.4}, threshold {threshold:.4}), lower bound {lower}, certified count {k}",
        if holds { "hold" } else { "fail" }
    ))
}

fn l_identity() -> Check {
    const N: usize = 10_000;
    // ζ(5/2) to 20 digits.
    const ZETA_5_2: f64 = 1.341_487_257_250_917_179_8;
    let d = oracles::divisor_counts(N);
    let head: f64 = (1..=N).map(|k| d[k] as f64 * (k as f64).powf(-2.5)).sum();
    let tail = ZETA_5_2 * ZETA_5_2 - head;
    let pol = PrecisionPolicy::default();
    let mut worst: f64 = 0.0;
    for t in [3.0, 14.0] {
        let partial: f64 = (1..=N as u64).map(|n| oracles::eta_pairs(t, n) * (n as f64).powf(-2.5)).sum();
        let zp = zeta_complex(Complex64::new(2.5, t), &pol).map_err(|e| e.to_string())?;
        let zm = zeta_complex(Complex64::new(2.5, -t), &pol).map_err(|e| e.to_string())?;
        let product = zp.value * zm.value;
        let err = zp.abs_error * zm.value.norm() + zm.abs_error * zp.value.norm() + 1e-14;
        let gap = (product.re - partial).abs();
        ensure(gap <= tail + err, format!("t = {t}: gap {gap:.3e} > tail {tail:.3e}"))?;
        let l = eisenstein_l(t, Complex64::new(2.5, 0.0), &pol).map_err(|e| e.to_string())?;
        ensure((l.value - product).norm() <= l.abs_error + err, format!("t = {t}: L disagrees with the zeta product"))?;
        worst = worst.max(gap);
    }
    Ok(format!("max gap {worst:.3e} within divisor tail {tail:.3e}"))
}

fn zeta_moments() -> Check {
    let pol = PrecisionPolicy::default();
    let both = |t: f64, k: u32| -> std::result::Result<f64, String> {
        let a = zeta_moment(t, k, 0.05, &pol).map_err(|e| e.to_string())?.value;
        let b = zeta_moment(t, k, 0.025, &pol).map_err(|e| e.to_string())?.value;
        ensure(((a - b) / b).abs() < 0.01, format!("k = {k}, T = {t}: resolutions disagree ({a} vs {b})"))?;
        Ok(b)
    };
    let t = 2000.0f64;
    let m1 = both(t, 1)?;
    let euler_gamma = 0.577_215_664_901_532_9;
    let main = t.ln() + 2.0 * euler_gamma - 1.0 - (2.0 * PI).ln();
    let rel = (m1 - main).abs() / main;
    ensure(rel < 0.05, format!("k = 1: {m1:.5} vs main term {main:.5}"))?;
    let grid = [250.0f64, 500.0, 1000.0, 2000.0];
    let mut pts = Vec::new();
    for &t in &grid {
        pts.push((t.ln().ln(), both(t, 2)?.ln()));
    }
    let n = pts.len() as f64;
    let (mx, my) = (pts.iter().map(|p| p.0).sum::<f64>() / n, pts.iter().map(|p| p.1).sum::<f64>() / n);
    let slope = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum::<f64>() / pts.iter().map(|p| (p.0 - mx).powi(2)).sum::<f64>();
    let msg = format!("k = 1: {m1:.5} vs {main:.5} ({:.2}%); k = 2 exponent in log T: {slope:.3}", 100.0 * rel);
    ensure((3.0..=5.5).contains(&slope), msg.clone())?;
    Ok(msg)
}

fn bessel_kernel() -> Check {
    let pol = PrecisionPolicy::default();
    let mut worst: f64 = 0.0;
    for x in [0.5, 1.0, 5.0] {
        let k = bessel_k_scaled(0.0, x, &pol).map_err(|e| e.to_string())?;
        let o = oracles::k0_series(x, 256).to_f64();
        worst = worst.max(((k.value.to_f64() - o) / o).abs());
    }
    ensure(worst < 1e-10, format!("K0 relative error {worst:.2e}"))?;
    let tau = 20.0;
    let mut worst_scaled: f64 = 0.0;
    for x in [1.0, 5.0, 15.0, 25.0] {
        let k = bessel_k_scaled(tau, x, &pol).map_err(|e| e.to_string())?.value.to_f64();
        let unscaled = oracles::bessel_ki_tanh_sinh(tau, x, 256).to_f64() * (PI * tau / 2.0).exp();
        worst_scaled = worst_scaled.max((k - unscaled).abs() / k.abs().max(1e-3));
    }
    ensure(worst_scaled < 1e-10, format!("tau = 20 scaled vs unscaled: {worst_scaled:.2e}"))?;
    Ok(format!("K0 max rel error {worst:.2e}; tau = 20 max rel deviation {worst_scaled:.2e}"))
}

fn maass_pipeline() -> Check {
    let lam = oracles::hecke_sequence(400, |p| 2.0 * ((p as f64).sqrt() * 1.3).sin());
    let rec = MaassFormRecord::new(9.5337, &lam, 1e-12, "synthetic").map_err(|e| e.to_string())?;
    let mut file = tempfile::NamedTempFile::new().map_err(|e| e.to_string())?;
    file.write_all(rec.to_file_string().as_bytes()).map_err(|e| e.to_string())?;
    let path = file.path().to_str().ok_or("temp path is not UTF-8")?.to_owned();
    let seg = ["--x0", "0", "--a", "0.3", "--b", "2"];
    let s = cli(&[&["signs", "--maass-file", &path][..], &seg].concat());
    ensure(s.code == 0, format!("signs exited {}: {}", s.code, s.stderr.trim()))?;
    let k = signs_count(&s.stderr).ok_or("no count in signs summary")?;
    let n = cli(&[&["norms", "--maass-file", &path, "--p", "2"][..], &seg].concat());
    ensure(n.code == 0, format!("norms exited {}: {}", n.code, n.stderr.trim()))?;
    let m2 = num(&rows(&n.stdout)[0][1]);
    let c = cli(&[&["certify", "--maass-file", &path, "--n", "10"][..], &seg].concat());
    ensure(c.code == 0 || c.code == 1, format!("certify exited {}: {}", c.code, c.stderr.trim()))?;
    ensure(!rows(&c.stdout).is_empty(), "certify printed no row".into())?;

    let seg = GeodesicSegment::imaginary_axis(0.3, 2.0, 0.2).map_err(|e| e.to_string())?;
    let rec = Arc::new(rec);
    let pol = PrecisionPolicy::default();
    let base = MaassEvaluator::new(rec.clone(), pol, 1e-10, 0.05).map_err(|e| e.to_string())?;
    let scaled = MaassEvaluator::new(rec, pol, 1e-10, 0.05)
        .and_then(|e| e.with_rho1(0.037))
        .map_err(|e| e.to_string())?;
    let a = count_sign_changes(&MaassRestriction::new(Arc::new(base), seg), (0.3, 2.0), 200, 30).map_err(|e| e.to_string())?;
    let b = count_sign_changes(&MaassRestriction::new(Arc::new(scaled), seg), (0.3, 2.0), 200, 30).map_err(|e| e.to_string())?;
    ensure(a.count == k, format!("library count {} differs from CLI count {k}", a.count))?;
    ensure(a.count == b.count && a.brackets == b.brackets, format!("rescaling changed the count: {} vs {}", a.count, b.count))?;
    Ok(format!("CLI signs {k}, M2 {m2:.4}, certify exit {}; rescaled count identical", c.code))
}
