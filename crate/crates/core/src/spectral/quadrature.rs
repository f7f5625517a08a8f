//! Vector-valued adaptive Gauss–Kronrod (10/21) integration.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::QuadratureError;

#[allow(clippy::excessive_precision)]
const KRONROD_NODES: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const KRONROD_WEIGHTS: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_745_815_341,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Weights of the embedded Gauss rule at the odd-indexed Kronrod nodes.
#[allow(clippy::excessive_precision)]
const GAUSS_WEIGHTS: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Stopping rule: each component's error must fall below `max(abs, rel·max_i |I_i|)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerance {
    pub rel: f64,
    pub abs: f64,
}

#[derive(Clone, Copy, Debug)]
pub struct AdaptiveOptions {
    pub tolerance: Tolerance,
    pub max_subdivisions: usize,
    /// Evaluate panels on the rayon pool; results are identical either way.
    pub parallel: bool,
}

#[derive(Clone, Copy, Debug)]
struct Panel<const N: usize> {
    a: f64,
    b: f64,
    value: [f64; N],
    error: [f64; N],
    abs_value: [f64; N],
}

impl<const N: usize> Panel<N> {
    fn worst_error(&self) -> f64 {
        self.error.iter().copied().fold(0.0, f64::max)
    }
}

fn gauss_kronrod<const N: usize, F>(f: &F, a: f64, b: f64) -> Panel<N>
where
    F: Fn(f64) -> [f64; N],
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut samples = [[0.0; N]; 21];
    samples[10] = f(center);
    for j in 0..10 {
        let dx = half * KRONROD_NODES[j];
        samples[j] = f(center - dx);
        samples[20 - j] = f(center + dx);
    }

    let mut value = [0.0; N];
    let mut error = [0.0; N];
    let mut abs_value = [0.0; N];
    for c in 0..N {
        let mut kronrod = KRONROD_WEIGHTS[10] * samples[10][c];
        let mut gauss = 0.0;
        let mut resabs = KRONROD_WEIGHTS[10] * samples[10][c].abs();
        for j in 0..10 {
            let pair = samples[j][c] + samples[20 - j][c];
            kronrod += KRONROD_WEIGHTS[j] * pair;
            resabs += KRONROD_WEIGHTS[j] * (samples[j][c].abs() + samples[20 - j][c].abs());
            if j % 2 == 1 {
                gauss += GAUSS_WEIGHTS[j / 2] * pair;
            }
        }
        let mean = 0.5 * kronrod;
        let mut resasc = KRONROD_WEIGHTS[10] * (samples[10][c] - mean).abs();
        for j in 0..10 {
            resasc += KRONROD_WEIGHTS[j] * ((samples[j][c] - mean).abs() + (samples[20 - j][c] - mean).abs());
        }
        let resasc = resasc * half.abs();
        let resabs = resabs * half.abs();
        let mut err = ((kronrod - gauss) * half).abs();
        if resasc != 0.0 && err != 0.0 {
            err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
        }
        if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
            err = err.max(50.0 * f64::EPSILON * resabs);
        }
        value[c] = kronrod * half;
        error[c] = err;
        abs_value[c] = resabs;
    }
    Panel {
        a,
        b,
        value,
        error,
        abs_value,
    }
}

#[derive(PartialEq)]
struct Ranked {
    error: f64,
    index: usize,
}

impl Eq for Ranked {}

impl Ord for Ranked {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error
            .total_cmp(&other.error)
            .then_with(|| other.index.cmp(&self.index))
    }
}

impl PartialOrd for Ranked {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Neumaier-compensated sum.
pub fn compensated_sum(values: impl IntoIterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            carry += (sum - t) + v;
        } else {
            carry += (v - t) + sum;
        }
        sum = t;
    }
    sum + carry
}

/// Integrates `f` over `[edges[0], edges[last]]`, starting from the panels between consecutive edges.
pub fn integrate_adaptive<const N: usize, F>(
    f: &F,
    edges: &[f64],
    options: AdaptiveOptions,
) -> Result<[f64; N], QuadratureError>
where
    F: Fn(f64) -> [f64; N] + Sync,
{
    if edges.len() < 2 {
        return Ok([0.0; N]);
    }
    let initial: Vec<(f64, f64)> = edges.windows(2).map(|w| (w[0], w[1])).collect();
    let mut panels: Vec<Panel<N>> = if options.parallel && initial.len() > 1 {
        use rayon::prelude::*;
        initial.par_iter().map(|&(a, b)| gauss_kronrod(f, a, b)).collect()
    } else {
        initial.iter().map(|&(a, b)| gauss_kronrod(f, a, b)).collect()
    };
    let mut alive = vec![true; panels.len()];
    let mut heap: BinaryHeap<Ranked> = panels
        .iter()
        .enumerate()
        .map(|(index, p)| Ranked {
            error: p.worst_error(),
            index,
        })
        .collect();

    let mut value = [0.0; N];
    let mut error = [0.0; N];
    let mut abs_value = [0.0; N];
    for p in &panels {
        for c in 0..N {
            value[c] += p.value[c];
            error[c] += p.error[c];
            abs_value[c] += p.abs_value[c];
        }
    }

    let mut subdivisions = 0;
    loop {
        let scale = value.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        let target = options.tolerance.abs.max(options.tolerance.rel * scale);
        let converged = (0..N).all(|c| {
            let floor = 50.0 * f64::EPSILON * abs_value[c];
            error[c] <= target || error[c] <= 2.0 * floor
        });
        if converged {
            break;
        }
        let worst = error.iter().copied().fold(0.0, f64::max);
        let fail = QuadratureError {
            achieved: worst,
            requested: target,
            subdivisions,
        };
        if subdivisions >= options.max_subdivisions {
            return Err(fail);
        }
        let Some(Ranked { index, .. }) = heap.pop() else {
            return Err(fail);
        };
        let parent = panels[index];
        let mid = 0.5 * (parent.a + parent.b);
        if !(mid > parent.a && mid < parent.b) {
            return Err(fail);
        }
        let (left, right) = if options.parallel {
            rayon::join(|| gauss_kronrod(f, parent.a, mid), || gauss_kronrod(f, mid, parent.b))
        } else {
            (gauss_kronrod(f, parent.a, mid), gauss_kronrod(f, mid, parent.b))
        };
        alive[index] = false;
        for c in 0..N {
            value[c] += left.value[c] + right.value[c] - parent.value[c];
            error[c] = (error[c] + left.error[c] + right.error[c] - parent.error[c]).max(0.0);
            abs_value[c] += left.abs_value[c] + right.abs_value[c] - parent.abs_value[c];
        }
        for child in [left, right] {
            heap.push(Ranked {
                error: child.worst_error(),
                index: panels.len(),
            });
            panels.push(child);
            alive.push(true);
        }
        subdivisions += 1;
    }

    let mut finished: Vec<&Panel<N>> = panels
        .iter()
        .zip(&alive)
        .filter_map(|(p, &keep)| keep.then_some(p))
        .collect();
    finished.sort_by(|x, y| x.a.total_cmp(&y.a));
    let mut out = [0.0; N];
    for (c, slot) in out.iter_mut().enumerate() {
        *slot = compensated_sum(finished.iter().map(|p| p.value[c]));
    }
    Ok(out)
}

/// Sorted, de-duplicated edges inside `[lo, hi]`, always including both ends.
pub fn merge_edges(lo: f64, hi: f64, interior: impl IntoIterator<Item = f64>) -> Vec<f64> {
    let mut edges: Vec<f64> = interior
        .into_iter()
        .filter(|e| e.is_finite() && *e > lo && *e < hi)
        .collect();
    edges.push(lo);
    edges.push(hi);
    edges.sort_by(f64::total_cmp);
    let min_gap = 1e-12 * (hi - lo).abs();
    let mut out: Vec<f64> = Vec::with_capacity(edges.len());
    for e in edges {
        match out.last() {
            Some(&last) if e - last <= min_gap => {
                if e == hi {
                    *out.last_mut().unwrap() = hi;
                }
            }
            _ => out.push(e),
        }
    }
    if out.len() >= 2 && out[0] != lo {
        out[0] = lo;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(rel: f64) -> AdaptiveOptions {
        AdaptiveOptions {
            tolerance: Tolerance { rel, abs: 0.0 },
            max_subdivisions: 2000,
            parallel: false,
        }
    }

    #[test]
    fn polynomial_is_exact() {
        let f = |x: f64| [x.powi(7) - 3.0 * x * x];
        let got = integrate_adaptive(&f, &[0.0, 2.0], opts(1e-14)).unwrap()[0];
        let want = 2f64.powi(8) / 8.0 - 8.0;
        assert!((got - want).abs() < 1e-13 * want.abs());
    }

    #[test]
    fn endpoint_singularity_converges() {
        let f = |x: f64| [x.sqrt().recip()];
        let got = integrate_adaptive(&f, &[0.0, 1.0], opts(1e-10)).unwrap()[0];
        assert!((got - 2.0).abs() < 1e-9);
    }

    #[test]
    fn narrow_peak_found_from_breakpoints() {
        let w = 1e-6;
        let f = move |x: f64| [w / ((x - 0.3).powi(2) + w * w)];
        let edges = merge_edges(0.0, 1.0, [0.3 - w, 0.3, 0.3 + w]);
        let got = integrate_adaptive(&f, &edges, opts(1e-10)).unwrap()[0];
        let want = (0.7 / w).atan() + (0.3 / w).atan();
        assert!((got - want).abs() < 1e-9 * want);
    }

    #[test]
    fn zero_integrand_gives_zero() {
        let f = |_x: f64| [0.0, 0.0];
        assert_eq!(integrate_adaptive(&f, &[0.0, 1.0], opts(1e-8)).unwrap(), [0.0, 0.0]);
    }

    #[test]
    fn exhausted_budget_reports_achieved_error() {
        let f = |x: f64| [(1.0 / x).sin() / x];
        let options = AdaptiveOptions {
            max_subdivisions: 5,
            ..opts(1e-14)
        };
        let err = integrate_adaptive(&f, &[1e-4, 1.0], options).unwrap_err();
        assert_eq!(err.subdivisions, 5);
        assert!(err.achieved > err.requested);
    }

    #[test]
    fn parallel_and_serial_agree_bitwise() {
        let f = |x: f64| [(30.0 * x).sin() * (-x).exp(), x.cos()];
        let edges = merge_edges(0.0, 10.0, (1..10).map(f64::from));
        let serial = integrate_adaptive(&f, &edges, opts(1e-12)).unwrap();
        let parallel = integrate_adaptive(
            &f,
            &edges,
            AdaptiveOptions {
                parallel: true,
                ..opts(1e-12)
            },
        )
        .unwrap();
        assert_eq!(serial, parallel);
    }

    #[test]
    fn merge_edges_sorts_and_dedups() {
        let e = merge_edges(0.0, 1.0, [0.5, 0.25, 0.5, 2.0, -1.0, f64::NAN]);
        assert_eq!(e, vec![0.0, 0.25, 0.5, 1.0]);
    }
}
