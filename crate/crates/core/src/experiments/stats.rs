use serde::Serialize;

/// min, median, mean, standard deviation, max.
///
/// The median of an even-sized sample is the lower middle element, so it is
/// always an observed value. The standard deviation uses the `n - 1`
/// denominator and is 0 for a single sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FiveStats {
    pub min: f64,
    pub median: f64,
    pub mean: f64,
    pub sd: f64,
    pub max: f64,
}

impl FiveStats {
    /// `None` for an empty sample.
    pub fn from_values(values: &[f64]) -> Option<Self> {
        if values.is_empty() {
            return None;
        }
        let mut sorted = values.to_vec();
        sorted.sort_by(f64::total_cmp);
        let n = sorted.len();
        let mean = sorted.iter().sum::<f64>() / n as f64;
        let sd = if n > 1 {
            let ss: f64 = sorted.iter().map(|v| (v - mean).powi(2)).sum();
            (ss / (n - 1) as f64).sqrt()
        } else {
            0.0
        };
        Some(FiveStats {
            min: sorted[0],
            median: sorted[(n - 1) / 2],
            mean,
            sd,
            max: sorted[n - 1],
        })
    }

    /// Every statistic divided by `k` (the sd scales linearly as well).
    pub fn scaled(&self, k: f64) -> Self {
        FiveStats {
            min: self.min / k,
            median: self.median / k,
            mean: self.mean / k,
            sd: self.sd / k,
            max: self.max / k,
        }
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.min, self.median, self.mean, self.sd, self.max]
    }

    /// Comma-joined values rounded to 2 decimals with trailing zeros dropped,
    /// e.g. `31,32,31.87,0.9,33`.
    pub fn value_string(&self) -> String {
        self.as_array()
            .iter()
            .map(|&v| format!("{}", round2(v)))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Comma-joined ratios at fixed 2 decimals, e.g. `1.03,1.07,1.06,0.03,1.10`.
    ///
    /// Each ratio is taken from the displayed (2-decimal) value, so the ratio
    /// string is consistent with [`FiveStats::value_string`] as printed.
    pub fn ratio_string(&self, bkv: f64) -> String {
        self.as_array()
            .iter()
            .map(|&v| format!("{:.2}", round2(round2(v) / bkv)))
            .collect::<Vec<_>>()
            .join(",")
    }
}

/// Rounds to 2 decimals, exact ties to even (9/8 shows as 1.12).
pub fn round2(v: f64) -> f64 {
    let r = (v * 100.0).round_ties_even() / 100.0;
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_sample() {
        let s = FiveStats::from_values(&[2.5]).unwrap();
        assert_eq!(s.as_array(), [2.5, 2.5, 2.5, 0.0, 2.5]);
        assert!(FiveStats::from_values(&[]).is_none());
    }

    #[test]
    fn lower_median_and_sample_sd() {
        let s = FiveStats::from_values(&[3.0, 1.0, 4.0, 2.0]).unwrap();
        assert_eq!(s.median, 2.0);
        assert_eq!(s.mean, 2.5);
        // sum of squares 5, n - 1 = 3
        assert!((s.sd - (5.0f64 / 3.0).sqrt()).abs() < 1e-15);
        assert_eq!((s.min, s.max), (1.0, 4.0));
    }

    #[test]
    fn table_style_strings() {
        let s = FiveStats {
            min: 31.0,
            median: 32.0,
            mean: 31.8733,
            sd: 0.9012,
            max: 33.0,
        };
        assert_eq!(s.value_string(), "31,32,31.87,0.9,33");
        assert_eq!(s.ratio_string(30.0), "1.03,1.07,1.06,0.03,1.10");

        let c = FiveStats::from_values(&[2.283333333333333; 3]).unwrap();
        assert_eq!(c.value_string(), "2.28,2.28,2.28,0,2.28");
        assert_eq!(c.ratio_string(1.1), "2.07,2.07,2.07,0.00,2.07");
    }

    #[test]
    fn rounding() {
        assert_eq!(round2(0.004), 0.0);
        assert_eq!(round2(-0.001).to_string(), "0");
        assert_eq!(round2(1.005 + 1e-9), 1.01);
        assert_eq!(round2(13.39), 13.39);
        assert_eq!(round2(1.125), 1.12);
        assert_eq!(round2(46.86 / 44.0), 1.06);
    }
}
