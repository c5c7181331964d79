use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{checked, QuadStatus, QuadraturePlan, QuadratureResult};
use crate::error::{Error, Result};
use crate::sum::NeumaierSum;

// 21-point Kronrod extension of the 10-point Gauss rule (QUADPACK qk21).
const XGK: [f64; 11] = [
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
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_208_980_940_720,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    floor: f64,
}

impl PartialEq for Segment {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Segment {
    fn cmp(&self, o: &Self) -> Ordering {
        // ties broken by position so refinement order is reproducible
        self.error
            .total_cmp(&o.error)
            .then_with(|| o.a.total_cmp(&self.a))
    }
}

/// (integral, error estimate, rounding floor of the estimate)
fn gk21<F>(f: &F, a: f64, b: f64) -> Result<(f64, f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = checked(c, f(c)?)?;
    let mut resg = 0.0;
    let mut resk = WGK[10] * fc;
    let mut resabs = resk.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = h * XGK[j];
        let (x1, x2) = (c - dx, c + dx);
        let f1 = checked(x1, f(x1)?)?;
        let f2 = checked(x2, f(x2)?)?;
        fv1[j] = f1;
        fv2[j] = f2;
        resk += WGK[j] * (f1 + f2);
        resabs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            resg += WG[j / 2] * (f1 + f2);
        }
    }
    let reskh = resk * 0.5;
    let mut resasc = WGK[10] * (fc - reskh).abs();
    for j in 0..10 {
        resasc += WGK[j] * ((fv1[j] - reskh).abs() + (fv2[j] - reskh).abs());
    }
    let result = resk * h;
    let resabs = resabs * h.abs();
    let resasc = resasc * h.abs();
    let mut err = ((resk - resg) * h).abs();
    if resasc != 0.0 && err != 0.0 {
        err = resasc * (200.0 * err / resasc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * resabs;
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(floor);
    }
    Ok((result, err, floor))
}

/// Adaptive Gauss-Kronrod quadrature on [a, b], bisecting the segment with
/// the largest error estimate first.
pub fn integrate_finite<F>(f: F, a: f64, b: f64, plan: &QuadraturePlan) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<f64>,
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::InvalidPlan(format!("finite bounds required, got [{a}, {b}]")));
    }
    if a == b {
        return Ok(QuadratureResult {
            value: 0.0,
            error_estimate: 0.0,
            cells_or_nodes: 0,
            status: QuadStatus::Converged,
        });
    }
    if a > b {
        let r = integrate_finite(f, b, a, plan)?;
        return Ok(r.scaled(-1.0));
    }
    let (v, e, fl) = gk21(&f, a, b)?;
    let mut heap = BinaryHeap::new();
    heap.push(Segment { a, b, value: v, error: e, floor: fl });
    let mut total = v;
    let mut total_err = e;
    let mut total_floor = fl;
    let status = loop {
        // an error made of rounding floors cannot shrink by bisection
        if total_err <= plan.tolerance(total) || total_err <= 2.0 * total_floor {
            break QuadStatus::Converged;
        }
        if heap.len() >= plan.max_subdivisions {
            break QuadStatus::MaxRefinement;
        }
        let seg = heap.pop().expect("heap is never empty");
        let m = 0.5 * (seg.a + seg.b);
        if !(m > seg.a && m < seg.b) {
            heap.push(seg);
            break QuadStatus::MaxRefinement;
        }
        let (v1, e1, f1) = gk21(&f, seg.a, m)?;
        let (v2, e2, f2) = gk21(&f, m, seg.b)?;
        total += v1 + v2 - seg.value;
        total_err += e1 + e2 - seg.error;
        total_floor += f1 + f2 - seg.floor;
        heap.push(Segment { a: seg.a, b: m, value: v1, error: e1, floor: f1 });
        heap.push(Segment { a: m, b: seg.b, value: v2, error: e2, floor: f2 });
    };
    // final totals summed in a fixed order
    let mut segs = heap.into_vec();
    segs.sort_by(|x, y| x.a.total_cmp(&y.a));
    let value: NeumaierSum = segs.iter().map(|s| s.value).collect();
    let error: f64 = segs.iter().map(|s| s.error).sum();
    Ok(QuadratureResult {
        value: value.value(),
        error_estimate: error,
        cells_or_nodes: segs.len(),
        status,
    })
}

/// ∫_a^∞ f via x = a + t/(1-t) on [0, 1).
pub fn integrate_semi_infinite<F>(f: F, a: f64, plan: &QuadraturePlan) -> Result<QuadratureResult>
where
    F: Fn(f64) -> Result<f64>,
{
    let g = |t: f64| -> Result<f64> {
        let u = 1.0 - t;
        let x = a + t / u;
        let v = f(x)?;
        if v == 0.0 {
            return Ok(0.0);
        }
        checked(x, v / (u * u))
    };
    integrate_finite(g, 0.0, 1.0, plan)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_sine() {
        let plan = QuadraturePlan::finite(0.0, 1.0);
        let r = integrate_finite(|x| Ok(x * x), 0.0, 1.0, &plan).unwrap();
        assert!((r.value - 1.0 / 3.0).abs() < 1e-14);
        assert_eq!(r.status, QuadStatus::Converged);
        let r = integrate_finite(|x: f64| Ok(x.sin()), 0.0, std::f64::consts::PI, &plan).unwrap();
        assert!((r.value - 2.0).abs() < 1e-14);
    }

    #[test]
    fn endpoint_singularity_refines() {
        let plan = QuadraturePlan::finite(0.0, 1.0).with_targets(1e-10, 1e-10);
        let r = integrate_finite(|x: f64| Ok(1.0 / x.sqrt()), 0.0, 1.0, &plan).unwrap();
        assert!((r.value - 2.0).abs() < 1e-9);
    }

    #[test]
    fn non_finite_is_an_error() {
        let plan = QuadraturePlan::finite(-1.0, 1.0);
        let r = integrate_finite(|x: f64| Ok(1.0 / x), -1.0, 0.5, &plan);
        assert!(r.is_ok() || matches!(r, Err(Error::NonFiniteIntegrand { .. })));
        let r = integrate_finite(|_| Ok(f64::NAN), 0.0, 1.0, &plan);
        assert!(matches!(r, Err(Error::NonFiniteIntegrand { .. })));
    }

    #[test]
    fn semi_infinite_exponential() {
        let plan = QuadraturePlan::finite(0.0, 1.0);
        let r = integrate_semi_infinite(|x: f64| Ok((-x).exp()), 0.0, &plan).unwrap();
        assert!((r.value - 1.0).abs() < 1e-13);
    }
}
