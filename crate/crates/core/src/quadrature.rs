//! Adaptive Gauss–Legendre quadrature.
//!
//! Every panel is integrated with a 20-point rule and compared with the sum
//! over its two halves; the worst panel is bisected until the total error
//! estimate drops below the requested tolerance. The vector form integrates many
//! integrands sharing the same evaluation points, which is how Gram and
//! matrix-element tables are built.

use std::collections::BinaryHeap;
use std::num::NonZeroUsize;
use std::sync::OnceLock;

use gauss_quad::GaussLegendre;

use crate::error::{HahnError, Result};

const RULE_POINTS: usize = 20;
const MAX_PANELS: usize = 4000;

fn rule() -> &'static [(f64, f64)] {
    static RULE: OnceLock<Vec<(f64, f64)>> = OnceLock::new();
    RULE.get_or_init(|| {
        let gl = GaussLegendre::new(NonZeroUsize::new(RULE_POINTS).unwrap());
        gl.nodes()
            .zip(gl.weights())
            .map(|(x, w)| (*x, *w))
            .collect()
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct VecEstimate {
    pub values: Vec<f64>,
    /// Largest componentwise error estimate summed over panels.
    pub error: f64,
}

fn panel<F>(f: &mut F, a: f64, b: f64, dim: usize) -> Vec<f64>
where
    F: FnMut(f64, &mut [f64]),
{
    let half = 0.5 * (b - a);
    let mid = 0.5 * (a + b);
    let mut acc = vec![0.0; dim];
    let mut buf = vec![0.0; dim];
    for &(x, w) in rule() {
        buf.iter_mut().for_each(|v| *v = 0.0);
        f(mid + half * x, &mut buf);
        for (s, v) in acc.iter_mut().zip(&buf) {
            *s += w * v;
        }
    }
    acc.iter_mut().for_each(|v| *v *= half);
    acc
}

struct Panel {
    lo: f64,
    hi: f64,
    values: Vec<f64>,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn refine<F>(f: &mut F, lo: f64, hi: f64, whole: &[f64], dim: usize) -> (Panel, Panel)
where
    F: FnMut(f64, &mut [f64]),
{
    let mid = 0.5 * (lo + hi);
    let left = panel(f, lo, mid, dim);
    let right = panel(f, mid, hi, dim);
    let diff = whole
        .iter()
        .zip(left.iter().zip(&right))
        .map(|(w, (l, r))| (w - l - r).abs())
        .fold(0.0, f64::max);
    // the halves inherit half the discrepancy of their parent each
    (
        Panel {
            lo,
            hi: mid,
            values: left,
            error: 0.5 * diff,
        },
        Panel {
            lo: mid,
            hi,
            values: right,
            error: 0.5 * diff,
        },
    )
}

/// Integrate a vector-valued function over `[a, b]`.
///
/// `f(x, out)` writes `dim` values into `out`. The panel with the largest
/// error estimate is bisected until the summed estimate falls below `tol`;
/// fails with [`HahnError::QuadratureFailed`] when the panel budget runs out.
pub fn integrate_vec<F>(mut f: F, dim: usize, a: f64, b: f64, tol: f64) -> Result<VecEstimate>
where
    F: FnMut(f64, &mut [f64]),
{
    if a == b {
        return Ok(VecEstimate {
            values: vec![0.0; dim],
            error: 0.0,
        });
    }
    let whole = panel(&mut f, a, b, dim);
    let (l, r) = refine(&mut f, a, b, &whole, dim);
    let mut heap = BinaryHeap::from([l, r]);
    let mut error: f64 = heap.iter().map(|p| p.error).sum();
    while error > tol && heap.len() < MAX_PANELS {
        let worst = heap.pop().expect("nonempty heap");
        let mid = 0.5 * (worst.lo + worst.hi);
        if mid <= worst.lo || mid >= worst.hi {
            heap.push(worst);
            break;
        }
        let (l, r) = refine(&mut f, worst.lo, worst.hi, &worst.values, dim);
        error += l.error + r.error - worst.error;
        heap.push(l);
        heap.push(r);
        if !error.is_finite() {
            return Err(HahnError::NonFinite("quadrature"));
        }
    }
    error = heap.iter().map(|p| p.error).sum();
    let mut total = vec![0.0; dim];
    for p in &heap {
        for (t, v) in total.iter_mut().zip(&p.values) {
            *t += v;
        }
    }
    if !total.iter().all(|v| v.is_finite()) {
        return Err(HahnError::NonFinite("quadrature"));
    }
    if error > tol {
        return Err(HahnError::QuadratureFailed {
            achieved: error,
            requested: tol,
        });
    }
    Ok(VecEstimate {
        values: total,
        error,
    })
}

/// Integrate a scalar function over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F>(mut f: F, a: f64, b: f64, tol: f64) -> Result<Estimate>
where
    F: FnMut(f64) -> f64,
{
    let est = integrate_vec(|x, out| out[0] = f(x), 1, a, b, tol)?;
    Ok(Estimate {
        value: est.values[0],
        error: est.error,
    })
}

/// Integrate over a sequence of consecutive breakpoints.
pub fn integrate_vec_pieces<F>(
    mut f: F,
    dim: usize,
    breaks: &[f64],
    tol: f64,
) -> Result<VecEstimate>
where
    F: FnMut(f64, &mut [f64]),
{
    let mut values = vec![0.0; dim];
    let mut error = 0.0;
    let pieces = breaks.len().saturating_sub(1).max(1) as f64;
    for w in breaks.windows(2) {
        let est = integrate_vec(&mut f, dim, w[0], w[1], tol / pieces)?;
        for (v, e) in values.iter_mut().zip(&est.values) {
            *v += e;
        }
        error += est.error;
    }
    Ok(VecEstimate { values, error })
}

/// Find how far from `start` (stepping by `step`, sign gives the direction)
/// the integrand's logarithm `log_f` falls `decades` decades below `log_peak`.
///
/// Returns the first point past which three consecutive samples are below the
/// threshold. Used to truncate integrals over unbounded domains.
pub fn decay_cutoff<G>(
    log_f: G,
    start: f64,
    step: f64,
    log_peak: f64,
    decades: f64,
    limit: f64,
) -> f64
where
    G: Fn(f64) -> f64,
{
    let threshold = log_peak - decades * std::f64::consts::LN_10;
    let mut x = start;
    let mut below = 0;
    let mut h = step;
    while (x - start).abs() < limit {
        x += h;
        let v = log_f(x);
        if !(v > threshold) {
            below += 1;
            if below >= 3 {
                return x;
            }
        } else {
            below = 0;
        }
        h *= 1.1;
    }
    x
}
