//! Adaptive Gauss–Kronrod (7/15) quadrature on finite intervals.
//!
//! The integrand may be vector valued; subdivision is driven by the largest
//! component error so that a whole family of related integrals (for example
//! every state probability of a chain) shares one set of nodes.

#![allow(clippy::excessive_precision, clippy::needless_range_loop)]

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_845_693_013,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

#[derive(Debug, Clone, Copy)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Tolerance {
            abs: 1e-300,
            rel: 1e-13,
            max_intervals: 4000,
        }
    }
}

struct Segment {
    a: f64,
    b: f64,
    value: Vec<f64>,
    error: f64,
}

fn kronrod<F>(f: &mut F, a: f64, b: f64, dim: usize) -> (Vec<f64>, f64)
where
    F: FnMut(f64, &mut [f64]),
{
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    // samples[k] holds the 15 node values for component k, centre last
    let mut samples = vec![[0.0f64; 15]; dim];
    let mut fx = vec![0.0; dim];
    for j in 0..7 {
        for (slot, s) in [(2 * j, -1.0), (2 * j + 1, 1.0)] {
            f(c + s * h * XGK[j], &mut fx);
            for d in 0..dim {
                samples[d][slot] = fx[d];
            }
        }
    }
    f(c, &mut fx);
    for d in 0..dim {
        samples[d][14] = fx[d];
    }

    let mut value = vec![0.0; dim];
    let mut err: f64 = 0.0;
    for (d, sm) in samples.iter().enumerate() {
        let mut kron = WGK[7] * sm[14];
        let mut gauss = WG[3] * sm[14];
        let mut resabs = WGK[7] * sm[14].abs();
        for j in 0..7 {
            let pair = sm[2 * j] + sm[2 * j + 1];
            kron += WGK[j] * pair;
            resabs += WGK[j] * (sm[2 * j].abs() + sm[2 * j + 1].abs());
            if j % 2 == 1 {
                gauss += WG[j / 2] * pair;
            }
        }
        let mean = 0.5 * kron;
        let mut resasc = WGK[7] * (sm[14] - mean).abs();
        for j in 0..7 {
            resasc += WGK[j] * ((sm[2 * j] - mean).abs() + (sm[2 * j + 1] - mean).abs());
        }
        let (kron, resabs, resasc) = (kron * h, resabs * h.abs(), resasc * h.abs());
        let mut e = (kron - gauss * h).abs();
        if resasc != 0.0 && e != 0.0 {
            e = resasc * (200.0 * e / resasc).powf(1.5).min(1.0);
        }
        if resabs > f64::MIN_POSITIVE / f64::EPSILON {
            e = e.max(2.0 * f64::EPSILON * resabs);
        }
        value[d] = kron;
        err = err.max(e);
    }
    (value, err)
}

/// Integrates the vector-valued `f` over `[a, b]`, pre-split at `breaks`.
///
/// `f(x, out)` writes the `dim` integrand components at `x` into `out`.
pub fn integrate_vec<F>(
    mut f: F,
    a: f64,
    b: f64,
    breaks: &[f64],
    dim: usize,
    tol: Tolerance,
) -> Result<Vec<f64>>
where
    F: FnMut(f64, &mut [f64]),
{
    if !(a.is_finite() && b.is_finite()) {
        return Err(Error::Numerical("quadrature bounds must be finite".into()));
    }
    if a == b {
        return Ok(vec![0.0; dim]);
    }
    let mut pts: Vec<f64> = std::iter::once(a)
        .chain(breaks.iter().copied().filter(|&p| p > a && p < b))
        .chain(std::iter::once(b))
        .collect();
    pts.sort_by(f64::total_cmp);
    pts.dedup();

    let mut segs: Vec<Segment> = pts
        .windows(2)
        .map(|w| {
            let (value, error) = kronrod(&mut f, w[0], w[1], dim);
            Segment { a: w[0], b: w[1], value, error }
        })
        .collect();

    loop {
        let mut total = vec![0.0; dim];
        let mut err_total = 0.0;
        for s in &segs {
            for d in 0..dim {
                total[d] += s.value[d];
            }
            err_total += s.error;
        }
        let magnitude = total.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if err_total <= tol.abs.max(tol.rel * magnitude) {
            return Ok(total);
        }
        if segs.len() >= tol.max_intervals {
            // accept when the remaining error is still negligible at a looser level
            if err_total <= 1e3 * tol.abs.max(tol.rel * magnitude) {
                return Ok(total);
            }
            return Err(Error::Numerical(format!(
                "adaptive quadrature did not converge (error estimate {err_total:.3e})"
            )));
        }
        let worst = segs
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .expect("at least one segment");
        let s = segs.swap_remove(worst);
        let mid = 0.5 * (s.a + s.b);
        if mid <= s.a || mid >= s.b {
            // interval exhausted at machine precision; keep it as is
            segs.push(Segment { error: 0.0, ..s });
            continue;
        }
        for (lo, hi) in [(s.a, mid), (mid, s.b)] {
            let (value, error) = kronrod(&mut f, lo, hi, dim);
            segs.push(Segment { a: lo, b: hi, value, error });
        }
    }
}

/// Scalar convenience wrapper around [`integrate_vec`].
pub fn integrate<F>(mut f: F, a: f64, b: f64, breaks: &[f64], tol: Tolerance) -> Result<f64>
where
    F: FnMut(f64) -> f64,
{
    integrate_vec(|x, out| out[0] = f(x), a, b, breaks, 1, tol).map(|v| v[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kronrod_rule_is_exact_for_high_degree_polynomials() {
        // K15 integrates degree 22 exactly on a single panel
        let (v, _) = kronrod(&mut |x: f64, o: &mut [f64]| o[0] = x.powi(22), -1.0, 1.0, 1);
        assert!((v[0] - 2.0 / 23.0).abs() < 1e-15);
        let (v, _) = kronrod(&mut |x: f64, o: &mut [f64]| o[0] = 3.0 * x * x + x, 0.0, 2.0, 1);
        assert!((v[0] - 10.0).abs() < 1e-13);
    }

    #[test]
    fn gauss_weights_sum_to_interval_length() {
        let g: f64 = 2.0 * (WG[0] + WG[1] + WG[2]) + WG[3];
        let k: f64 = 2.0 * WGK[..7].iter().sum::<f64>() + WGK[7];
        assert!((g - 2.0).abs() < 1e-15);
        assert!((k - 2.0).abs() < 1e-15);
    }

    #[test]
    fn adaptive_handles_sharp_peaks_with_a_breakpoint() {
        let eps: f64 = 1e-4;
        let f = |x: f64| eps / ((x - 0.3).powi(2) + eps * eps);
        let exact = (0.7 / eps).atan() + (0.3 / eps).atan();
        let v = integrate(f, 0.0, 1.0, &[0.3], Tolerance::default()).unwrap();
        assert!(((v - exact) / exact).abs() < 1e-12, "{v} vs {exact}");
    }

    #[test]
    fn integrable_endpoint_singularity() {
        let v = integrate(|x: f64| x.powf(-0.5), 0.0, 1.0, &[], Tolerance { rel: 1e-10, ..Default::default() }).unwrap();
        assert!((v - 2.0).abs() < 1e-8, "{v}");
    }
}
