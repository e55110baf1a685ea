//! Lorenz curves, Gini coefficients, and the family-income density.

use super::{FitError, Sample};

/// Cumulative population share against cumulative value share, sorted
/// ascending by value, with the Gini coefficient of the curve.
#[derive(Debug, Clone, PartialEq)]
pub struct LorenzCurve {
    /// (population share, value share) pairs from (0, 0) to (1, 1).
    pub points: Vec<(f64, f64)>,
    /// Twice the area between the diagonal and the curve.
    pub gini: f64,
}

/// Builds the weighted empirical Lorenz curve. Weights act as population
/// counts: a row's weight moves the x axis, and weight times value moves y.
pub fn lorenz_empirical(sample: &Sample) -> Result<LorenzCurve, FitError> {
    if sample.is_empty() {
        return Err(FitError::EmptySample);
    }
    if sample.values().iter().any(|&v| v < 0.0) {
        return Err(FitError::DomainError(
            "Lorenz curves require nonnegative values".into(),
        ));
    }
    let rows = sample.sorted_rows();
    let mut points = Vec::with_capacity(rows.len() + 1);
    points.push((0.0, 0.0));
    let mut cum_weight = 0.0;
    let mut cum_value = 0.0;
    for &(value, weight) in &rows {
        cum_weight += weight;
        cum_value += weight * value;
        points.push((cum_weight, cum_value));
    }
    let (total_weight, total_value) = *points.last().unwrap();
    if total_value == 0.0 {
        return Err(FitError::AllZeroValues);
    }
    // Normalizing by the identically accumulated totals lands the final
    // point on exactly (1, 1).
    for p in &mut points {
        p.0 /= total_weight;
        p.1 /= total_value;
    }
    let mut area = 0.0;
    for pair in points.windows(2) {
        let (x0, y0) = pair[0];
        let (x1, y1) = pair[1];
        area += (x1 - x0) * (y0 + y1) * 0.5;
    }
    Ok(LorenzCurve {
        points,
        gini: 1.0 - 2.0 * area,
    })
}

/// Lorenz curve of an exponential bulk holding share `1 - f` of income with
/// the remaining fraction `f` concentrated at the top:
/// `y = (1 - f) (x + (1 - x) ln(1 - x))` for x < 1, jumping to 1 at x = 1.
///
/// Requires `0 <= x <= 1` and `0 <= f <= 1`; `f = 1` is the degenerate
/// all-income-at-the-top limit.
pub fn lorenz_closed_form(x: f64, f: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&x), "population share out of range");
    debug_assert!((0.0..=1.0).contains(&f), "income fraction out of range");
    if x >= 1.0 {
        return 1.0;
    }
    (1.0 - f) * (x + (1.0 - x) * (1.0 - x).ln())
}

/// Gini coefficient implied by [`lorenz_closed_form`]: `(1 + f) / 2`.
///
/// The exponential bulk alone contributes 1/2, and the point mass at the
/// top sweeps the remaining f of income to the right edge.
pub fn gini_two_class(f: f64) -> f64 {
    debug_assert!((0.0..=1.0).contains(&f), "income fraction out of range");
    (1.0 + f) / 2.0
}

/// Income density of a two-earner family when each earner draws from an
/// exponential with temperature `t`: the convolution `(r / t^2) e^{-r/t}`.
///
/// Zero at r = 0, peaks at r = t, and integrates to 1.
pub fn family_income_density(r: f64, t: f64) -> f64 {
    debug_assert!(t > 0.0, "temperature must be positive");
    debug_assert!(r >= 0.0, "income must be nonnegative");
    (r / (t * t)) * (-r / t).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn equal_values_trace_the_diagonal() {
        let sample = Sample::new(vec![1.0, 1.0, 1.0, 1.0], "x").unwrap();
        let curve = lorenz_empirical(&sample).unwrap();
        assert_relative_eq!(curve.gini, 0.0, epsilon = 1e-15);
        for &(x, y) in &curve.points {
            assert_relative_eq!(y, x, epsilon = 1e-15);
        }
    }

    #[test]
    fn single_owner_concentration() {
        let sample = Sample::new(vec![0.0, 0.0, 0.0, 1.0], "x").unwrap();
        let curve = lorenz_empirical(&sample).unwrap();
        assert_relative_eq!(curve.gini, 0.75, epsilon = 1e-15);
        assert_eq!(*curve.points.first().unwrap(), (0.0, 0.0));
        assert_eq!(*curve.points.last().unwrap(), (1.0, 1.0));
    }

    #[test]
    fn exponential_sample_gini_is_half() {
        let mut rng = ChaCha8Rng::seed_from_u64(51);
        let values: Vec<f64> = (0..1_000_000)
            .map(|_| -(1.0 - rng.random::<f64>()).ln())
            .collect();
        let curve = lorenz_empirical(&Sample::new(values, "x").unwrap()).unwrap();
        assert!((curve.gini - 0.5).abs() < 0.005, "gini = {}", curve.gini);
    }

    #[test]
    fn empirical_matches_closed_form_uniformly() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let values: Vec<f64> = (0..1_000_000)
            .map(|_| -(1.0 - rng.random::<f64>()).ln())
            .collect();
        let curve = lorenz_empirical(&Sample::new(values, "x").unwrap()).unwrap();
        let worst = curve
            .points
            .iter()
            .map(|&(x, y)| (y - lorenz_closed_form(x, 0.0)).abs())
            .fold(0.0, f64::max);
        assert!(worst <= 0.01, "sup deviation = {worst}");
    }

    #[test]
    fn curve_is_convex_and_below_diagonal() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let values: Vec<f64> = (0..500).map(|_| rng.random::<f64>().powi(3) * 40.0).collect();
        let weights: Vec<f64> = (0..500).map(|_| rng.random_range(0.5..4.0)).collect();
        let curve =
            lorenz_empirical(&Sample::with_weights(values, weights, "x").unwrap()).unwrap();
        let mut previous_slope = f64::NEG_INFINITY;
        for pair in curve.points.windows(2) {
            let slope = (pair[1].1 - pair[0].1) / (pair[1].0 - pair[0].0);
            assert!(slope >= previous_slope - 1e-12, "slopes must not decrease");
            previous_slope = slope;
            assert!(pair[1].1 <= pair[1].0 + 1e-12, "curve must not cross diagonal");
        }
    }

    #[test]
    fn weighted_curve_matches_row_expansion() {
        let values = vec![3.0, 1.0, 4.0, 1.5];
        let weights = vec![2.0, 3.0, 1.0, 2.0];
        let mut expanded = Vec::new();
        for (v, w) in values.iter().zip(&weights) {
            for _ in 0..(*w as usize) {
                expanded.push(*v);
            }
        }
        let weighted =
            lorenz_empirical(&Sample::with_weights(values, weights, "x").unwrap()).unwrap();
        let flat = lorenz_empirical(&Sample::new(expanded, "x").unwrap()).unwrap();
        assert_relative_eq!(weighted.gini, flat.gini, epsilon = 1e-12);
    }

    #[test]
    fn degenerate_samples_are_rejected() {
        assert_eq!(
            lorenz_empirical(&Sample::new(vec![], "x").unwrap()),
            Err(FitError::EmptySample)
        );
        assert_eq!(
            lorenz_empirical(&Sample::new(vec![0.0, 0.0], "x").unwrap()),
            Err(FitError::AllZeroValues)
        );
        assert!(matches!(
            lorenz_empirical(&Sample::new(vec![1.0, -1.0], "x").unwrap()),
            Err(FitError::DomainError(_))
        ));
    }

    #[test]
    fn closed_form_reference_values() {
        assert_relative_eq!(lorenz_closed_form(0.5, 0.0), 0.15343, epsilon = 1e-5);
        assert_relative_eq!(lorenz_closed_form(1.0 - 1e-9, 0.2), 0.8, epsilon = 1e-6);
        assert_eq!(lorenz_closed_form(1.0, 0.2), 1.0);
        assert_eq!(lorenz_closed_form(0.0, 0.3), 0.0);
    }

    #[test]
    fn two_class_gini_values() {
        assert_relative_eq!(gini_two_class(0.0), 0.5, epsilon = 1e-15);
        assert_relative_eq!(gini_two_class(0.2), 0.6, epsilon = 1e-15);
    }

    #[test]
    fn closed_form_area_identity() {
        // The area under y(x) for the pure-exponential curve is 1/4, which
        // is what pins its Gini at 1/2; with a top share f the bulk area
        // scales by (1 - f).
        for f in [0.0, 0.16, 0.4] {
            let n = 200_000;
            let mut area = 0.0;
            for i in 0..n {
                let x0 = i as f64 / n as f64;
                let x1 = (i + 1) as f64 / n as f64;
                area += (lorenz_closed_form(x0, f) + lorenz_closed_form(x1.min(1.0 - 1e-12), f))
                    * 0.5
                    * (x1 - x0);
            }
            assert_relative_eq!(area, (1.0 - f) / 4.0, epsilon = 1e-4);
        }
    }

    #[test]
    fn two_class_gini_matches_synthetic_sample() {
        // Exponential bulk plus a handful of top earners carrying an income
        // share f; their population share is negligible, so the empirical
        // Gini should land on (1 + f)/2.
        let f = 0.16;
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let mut values: Vec<f64> = (0..200_000)
            .map(|_| -(1.0 - rng.random::<f64>()).ln())
            .collect();
        let bulk_total: f64 = values.iter().sum();
        let top_total = f / (1.0 - f) * bulk_total;
        for _ in 0..20 {
            values.push(top_total / 20.0);
        }
        let curve = lorenz_empirical(&Sample::new(values, "x").unwrap()).unwrap();
        assert!(
            (curve.gini - gini_two_class(f)).abs() < 0.01,
            "gini = {} vs {}",
            curve.gini,
            gini_two_class(f)
        );
    }

    #[test]
    fn family_density_peaks_at_temperature_and_normalizes() {
        let t = 2.2;
        let peak = family_income_density(t, t);
        assert!(peak > family_income_density(t * 0.9, t));
        assert!(peak > family_income_density(t * 1.1, t));
        assert_relative_eq!(peak, 1.0 / (t * std::f64::consts::E), epsilon = 1e-12);
        assert_eq!(family_income_density(0.0, t), 0.0);

        // Gauss-Legendre panels out to 80 temperatures; the truncated mass
        // beyond that is ~1e-33.
        let nodes = [
            -0.9602898564975363,
            -0.7966664774136267,
            -0.525532409916329,
            -0.1834346424956498,
            0.1834346424956498,
            0.525532409916329,
            0.7966664774136267,
            0.9602898564975363,
        ];
        let gl_weights = [
            0.1012285362903763,
            0.2223810344533745,
            0.3137066458778873,
            0.362683783378362,
            0.362683783378362,
            0.3137066458778873,
            0.2223810344533745,
            0.1012285362903763,
        ];
        let panels = 400;
        let upper = 80.0 * t;
        let mut integral = 0.0;
        for p in 0..panels {
            let a = upper * p as f64 / panels as f64;
            let b = upper * (p + 1) as f64 / panels as f64;
            let half = (b - a) / 2.0;
            let mid = (a + b) / 2.0;
            for (x, w) in nodes.iter().zip(&gl_weights) {
                integral += w * half * family_income_density(mid + half * x, t);
            }
        }
        assert_relative_eq!(integral, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn sum_of_two_exponentials_gini() {
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        let values: Vec<f64> = (0..1_000_000)
            .map(|_| {
                -(1.0 - rng.random::<f64>()).ln() - (1.0 - rng.random::<f64>()).ln()
            })
            .collect();
        let curve = lorenz_empirical(&Sample::new(values, "x").unwrap()).unwrap();
        assert!(
            (curve.gini - 0.375).abs() < 0.005,
            "two-earner gini = {}",
            curve.gini
        );
    }
}
