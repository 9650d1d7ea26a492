//! Piecewise-polynomial surrogates built on Gauss–Legendre panels.
//!
//! A surrogate samples `f` at the Gauss–Legendre nodes of each panel and
//! interpolates barycentrically. Everything downstream — `|f|^p` integrals
//! split at the interpolant's roots, the antiderivative, the η-window
//! integral `G(y) = ∫_y^{y+η} f` and its absolute integral — is computed
//! exactly or to near machine precision on the surrogate. The discrepancy
//! between two surrogates at different resolutions estimates the
//! interpolation error.

use std::sync::OnceLock;

use super::{Measure, SegmentFunction};
use crate::error::{Error, Result};

/// Gauss–Legendre nodes (ascending) and weights on `[-1, 1]`.
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    /// Barycentric weights for interpolation at the nodes.
    pub bary: Vec<f64>,
}

impl GaussLegendre {
    pub fn new(m: usize) -> Self {
        assert!(m >= 2, "Gauss–Legendre order must be at least 2");
        let mut nodes = vec![0.0; m];
        let mut weights = vec![0.0; m];
        for i in 0..m {
            // Chebyshev-like initial guess, then Newton on P_m.
            let mut x = -(std::f64::consts::PI * (i as f64 + 0.75) / (m as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                let (p, d) = legendre(m, x);
                dp = d;
                let dx = p / d;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            let (_, d) = legendre(m, x);
            dp = if d != 0.0 { d } else { dp };
            nodes[i] = x;
            weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
        }
        let bary = (0..m)
            .map(|j| {
                let s = if j % 2 == 0 { 1.0 } else { -1.0 };
                s * ((1.0 - nodes[j] * nodes[j]) * weights[j]).sqrt()
            })
            .collect();
        GaussLegendre { nodes, weights, bary }
    }

    /// Cached rule of order `m`.
    pub fn cached(m: usize) -> &'static GaussLegendre {
        static RULES: OnceLock<Vec<GaussLegendre>> = OnceLock::new();
        let rules = RULES.get_or_init(|| (0..=64).map(|k| GaussLegendre::new(k.max(2))).collect());
        &rules[m.clamp(2, 64)]
    }

    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// `∫_lo^hi g` by this rule.
    pub fn integrate(&self, lo: f64, hi: f64, mut g: impl FnMut(f64) -> f64) -> f64 {
        let c = 0.5 * (lo + hi);
        let r = 0.5 * (hi - lo);
        let mut s = 0.0;
        for (x, w) in self.nodes.iter().zip(&self.weights) {
            s += w * g(c + r * x);
        }
        s * r
    }
}

/// `(P_m(x), P_m'(x))` by the three-term recurrence.
fn legendre(m: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=m {
        let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
        p0 = p1;
        p1 = p2;
    }
    let d = m as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Settings shared by all surrogate-based quadratures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureConfig {
    /// Gauss–Legendre order per panel.
    pub order: usize,
    /// Target value of `ω·w` (frequency times panel width) at the coarse resolution.
    pub phase_per_panel: f64,
    /// Lower bound on the number of coarse panels per unit-length piece.
    pub min_panels: usize,
    /// Relative disagreement between resolutions tolerated before failing.
    pub rel_tol: f64,
    /// Absolute disagreement always tolerated.
    pub abs_tol: f64,
}

impl Default for QuadratureConfig {
    fn default() -> Self {
        QuadratureConfig { order: 16, phase_per_panel: 3.0, min_panels: 4, rel_tol: 1e-6, abs_tol: 1e-12 }
    }
}

impl QuadratureConfig {
    /// Coarse panel count for a piece of length `len` and frequency `omega`.
    pub(crate) fn panels_for(&self, len: f64, omega: f64) -> usize {
        let n = (len * omega.max(1.0) / self.phase_per_panel).ceil() as usize;
        n.max(self.min_panels).max(1)
    }

    /// Check that two resolutions agree; returns the disagreement.
    pub(crate) fn compare(&self, what: &str, coarse: f64, fine: f64) -> Result<f64> {
        let d = (coarse - fine).abs();
        if !(d <= self.rel_tol * fine.abs() + self.abs_tol) {
            return Err(Error::QuadratureUnconverged(format!(
                "{what}: resolutions give {coarse:e} and {fine:e}"
            )));
        }
        Ok(d)
    }
}

/// One interpolation panel.
#[derive(Debug, Clone)]
struct Panel {
    lo: f64,
    hi: f64,
    values: Vec<f64>,
}

/// Piecewise polynomial interpolant of a [`SegmentFunction`].
#[derive(Debug, Clone)]
pub struct Surrogate {
    rule: &'static GaussLegendre,
    panels: Vec<Panel>,
    /// Antiderivative at the left edge of each panel (from the first panel).
    prefix: Vec<f64>,
    /// Largest evaluation error bound seen at any node.
    pub max_eval_error: f64,
}

impl Surrogate {
    /// Build on consecutive pieces `[breaks[i], breaks[i+1]]`, each split into
    /// `counts[i]` equal panels.
    pub fn build<F: SegmentFunction + ?Sized>(
        f: &F,
        breaks: &[f64],
        counts: &[usize],
        order: usize,
    ) -> Result<Self> {
        assert_eq!(breaks.len(), counts.len() + 1);
        let rule = GaussLegendre::cached(order);
        let m = rule.order();
        let mut bounds = Vec::new();
        for (i, &n) in counts.iter().enumerate() {
            let (lo, hi) = (breaks[i], breaks[i + 1]);
            for k in 0..n {
                let a = (lo * (n - k) as f64 + hi * k as f64) / n as f64;
                let b = if k + 1 == n { hi } else { (lo * (n - k - 1) as f64 + hi * (k + 1) as f64) / n as f64 };
                bounds.push((a, b));
            }
        }
        let ys: Vec<f64> = bounds
            .iter()
            .flat_map(|&(a, b)| {
                let c = 0.5 * (a + b);
                let r = 0.5 * (b - a);
                rule.nodes.iter().map(move |x| c + r * x)
            })
            .collect();
        let samples = f.eval_many(&ys)?;
        let mut max_eval_error = 0.0f64;
        let mut panels = Vec::with_capacity(bounds.len());
        for (j, &(lo, hi)) in bounds.iter().enumerate() {
            let values: Vec<f64> = samples[j * m..(j + 1) * m].iter().map(|s| s.value).collect();
            for s in &samples[j * m..(j + 1) * m] {
                max_eval_error = max_eval_error.max(s.abs_error);
            }
            panels.push(Panel { lo, hi, values });
        }
        let mut prefix = Vec::with_capacity(panels.len() + 1);
        let mut acc = 0.0;
        prefix.push(0.0);
        for p in &panels {
            let r = 0.5 * (p.hi - p.lo);
            acc += r * p.values.iter().zip(&rule.weights).map(|(v, w)| v * w).sum::<f64>();
            prefix.push(acc);
        }
        Ok(Surrogate { rule, panels, prefix, max_eval_error })
    }

    /// Uniform build over `[lo, hi]` sized for angular frequency `omega`.
    pub fn uniform<F: SegmentFunction + ?Sized>(
        f: &F,
        lo: f64,
        hi: f64,
        omega: f64,
        cfg: &QuadratureConfig,
        refine: usize,
    ) -> Result<Self> {
        let n = cfg.panels_for(hi - lo, omega) * refine;
        Self::build(f, &[lo, hi], &[n], cfg.order)
    }

    pub fn lo(&self) -> f64 {
        self.panels[0].lo
    }

    pub fn hi(&self) -> f64 {
        self.panels[self.panels.len() - 1].hi
    }

    fn panel_index(&self, y: f64) -> usize {
        match self.panels.binary_search_by(|p| {
            if y < p.lo {
                std::cmp::Ordering::Greater
            } else if y > p.hi {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Equal
            }
        }) {
            Ok(i) => i,
            Err(i) => i.min(self.panels.len() - 1),
        }
    }

    fn eval_in(&self, p: &Panel, y: f64) -> f64 {
        let c = 0.5 * (p.lo + p.hi);
        let r = 0.5 * (p.hi - p.lo);
        let x = (y - c) / r;
        let mut num = 0.0;
        let mut den = 0.0;
        for (j, (&xj, &bj)) in self.rule.nodes.iter().zip(&self.rule.bary).enumerate() {
            let d = x - xj;
            if d == 0.0 {
                return p.values[j];
            }
            let q = bj / d;
            num += q * p.values[j];
            den += q;
        }
        num / den
    }

    /// Interpolant value at `y`.
    pub fn eval(&self, y: f64) -> f64 {
        let i = self.panel_index(y);
        self.eval_in(&self.panels[i], y)
    }

    /// Antiderivative `∫_{lo}^{y}` of the interpolant.
    pub fn antiderivative(&self, y: f64) -> f64 {
        let i = self.panel_index(y);
        let p = &self.panels[i];
        let partial = self.rule.integrate(p.lo, y, |u| self.eval_in(p, u));
        self.prefix[i] + partial
    }

    /// Roots of the interpolant in `[lo, hi]` inside panel `i`, ascending.
    fn panel_roots(&self, i: usize, lo: f64, hi: f64) -> Vec<f64> {
        let p = &self.panels[i];
        roots_of(|y| self.eval_in(p, y), lo, hi, 3 * self.rule.order())
    }

    /// `∫_lo^hi |P(y)|^p w(y) dy` with `w` from the measure.
    pub fn abs_pow_integral(&self, lo: f64, hi: f64, p: f64, measure: Measure) -> f64 {
        let mut total = 0.0;
        for (i, panel) in self.panels.iter().enumerate() {
            let a = panel.lo.max(lo);
            let b = panel.hi.min(hi);
            if b <= a {
                continue;
            }
            let mut cuts = vec![a];
            cuts.extend(self.panel_roots(i, a, b));
            cuts.push(b);
            for w in cuts.windows(2) {
                total += self.rule.integrate(w[0], w[1], |y| {
                    self.eval_in(panel, y).abs().powf(p) * measure.weight(y)
                });
            }
        }
        total
    }

    /// `∫_a^b |F(y+η) - F(y)| dy` where `F` is the antiderivative.
    pub fn window_abs_integral(&self, a: f64, b: f64, eta: f64) -> f64 {
        // G is a polynomial between panel edges and panel edges shifted by -η.
        let mut cuts: Vec<f64> = vec![a, b];
        for p in &self.panels {
            for e in [p.lo, p.hi, p.lo - eta, p.hi - eta] {
                if e > a && e < b {
                    cuts.push(e);
                }
            }
        }
        cuts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        cuts.dedup_by(|x, y| (*x - *y).abs() <= 1e-15 * (1.0 + y.abs()));
        let g = |y: f64| self.antiderivative(y + eta) - self.antiderivative(y);
        let m = self.rule.order();
        let mut total = 0.0;
        for w in cuts.windows(2) {
            let mut pieces = vec![w[0]];
            pieces.extend(roots_of(g, w[0], w[1], 2 * m + 2));
            pieces.push(w[1]);
            for q in pieces.windows(2) {
                total += self.rule.integrate(q[0], q[1], |y| g(y).abs());
            }
        }
        total
    }
}

/// Sign-change roots of a smooth `g` on `[lo, hi]` from `samples` uniform
/// cells refined by bisection to machine precision.
pub(crate) fn roots_of(g: impl Fn(f64) -> f64, lo: f64, hi: f64, samples: usize) -> Vec<f64> {
    let mut roots = Vec::new();
    let n = samples.max(2);
    let mut y0 = lo;
    let mut g0 = g(lo);
    for k in 1..=n {
        let y1 = if k == n { hi } else { (lo * (n - k) as f64 + hi * k as f64) / n as f64 };
        let g1 = g(y1);
        if g0 == 0.0 {
            if y0 > lo {
                roots.push(y0);
            }
        } else if g0 * g1 < 0.0 {
            let (mut l, mut r, mut gl) = (y0, y1, g0);
            for _ in 0..100 {
                let mid = 0.5 * (l + r);
                if mid <= l || mid >= r {
                    break;
                }
                let gm = g(mid);
                if gm == 0.0 {
                    l = mid;
                    r = mid;
                    break;
                }
                if gm * gl < 0.0 {
                    r = mid;
                } else {
                    l = mid;
                    gl = gm;
                }
            }
            roots.push(0.5 * (l + r));
        }
        y0 = y1;
        g0 = g1;
    }
    roots
}
