//! Published distribution rows: `(instance, bkv, value stats, ratio stats)`.
//! The displayed ratios and the ratio-band counts must follow from the
//! displayed values alone.

use bigraph::experiments::{ratio_bucket_report, DistributionSummary, FiveStats, RatioBuckets};

const ROWS: &[(&str, f64, &str, &str)] = &[
    ("s3_027_117.cnfU", 18.0, "19,19,19,0,19", "1.06,1.06,1.06,0.00,1.06"),
    ("s3_045_330.cnfU", 30.0, "31,32,31.87,0.9,33", "1.03,1.07,1.06,0.03,1.10"),
    ("s3_081_1080.cnfU", 61.0, "65,65,65,0,65", "1.07,1.07,1.07,0.00,1.07"),
    ("s3_135_3015.cnfU", 103.0, "107,107,107.92,1.35,111", "1.04,1.04,1.05,0.01,1.08"),
    ("s3_243_9801.cnfU", 198.0, "211,211,211,0,211", "1.07,1.07,1.07,0.00,1.07"),
    ("s3_405_27270.cnfU", 335.0, "349,350,350.75,2.02,357", "1.04,1.04,1.05,0.01,1.07"),
    ("s3_729_88452.cnfU", 617.0, "665,665,665,0,665", "1.08,1.08,1.08,0.00,1.08"),
    ("scpb1.cnfU", 22.0, "22,24,23.93,0.5,25", "1.00,1.09,1.09,0.02,1.14"),
    ("scpc1.cnfU", 44.0, "44,47,46.86,0.82,50", "1.00,1.07,1.06,0.02,1.14"),
    ("scpd1.cnfU", 25.0, "25,27,26.67,0.48,28", "1.00,1.08,1.07,0.02,1.12"),
    ("scpb1.cnfW", 69.0, "72,76,75.73,2.06,85", "1.04,1.10,1.10,0.03,1.23"),
    ("scpc1.cnfW", 227.0, "249,257,256.67,2.83,265", "1.10,1.13,1.13,0.01,1.17"),
    ("scpd1.cnfW", 60.0, "66,71,70.9,1.66,78", "1.10,1.18,1.18,0.03,1.30"),
    ("scp41.cnfW", 429.0, "461,463,466.94,5.1,473", "1.07,1.08,1.09,0.01,1.10"),
    ("scp42.cnfW", 512.0, "568,580,582.46,9.85,612", "1.11,1.13,1.14,0.02,1.20"),
    ("scp43.cnfW", 516.0, "589,591,592.85,3.62,598", "1.14,1.15,1.15,0.01,1.16"),
    ("scp44.cnfW", 494.0, "540,547,547.8,4.18,555", "1.09,1.11,1.11,0.01,1.12"),
    ("scp45.cnfW", 512.0, "571,577,574,3,577", "1.12,1.13,1.12,0.01,1.13"),
    ("scp46.cnfW", 560.0, "603,612,611.6,5.12,620", "1.08,1.09,1.09,0.01,1.11"),
    ("scp47.cnfW", 430.0, "474,474,474.96,1,476", "1.10,1.10,1.10,0.00,1.11"),
    ("scp48.cnfW", 492.0, "521,538,538.29,8.93,557", "1.06,1.09,1.09,0.02,1.13"),
    ("scp49.cnfW", 641.0, "741,747,745.5,3.33,750", "1.16,1.17,1.16,0.01,1.17"),
    ("scp51.cnfW", 253.0, "282,291,290.33,2.28,295", "1.11,1.15,1.15,0.01,1.17"),
    ("scp61.cnfW", 138.0, "152,157,157.1,2.01,163", "1.10,1.14,1.14,0.01,1.18"),
    ("scpa1.cnfW", 253.0, "273,286,286.03,4.68,297", "1.08,1.13,1.13,0.02,1.17"),
    ("m100_50_10_10.cnfU", 8.0, "8,8,8.35,0.48,9", "1.00,1.00,1.04,0.06,1.12"),
    ("m100_100_10_10.cnfU", 12.0, "13,14,13.6,0.51,15", "1.08,1.17,1.13,0.04,1.25"),
    ("m100_100_10_15.cnfU", 10.0, "10,11,11.25,0.51,13", "1.00,1.10,1.12,0.05,1.30"),
    ("m100_100_10_30.cnfU", 9.0, "9,10,9.95,0.83,12", "1.00,1.11,1.11,0.09,1.33"),
    ("m100_100_30_30.cnfU", 6.0, "6,6,6,0,6", "1.00,1.00,1.00,0.00,1.00"),
    ("m200_100_10_30.cnfU", 11.0, "11,12,11.98,0.28,13", "1.00,1.09,1.09,0.03,1.18"),
    ("m200_100_30_50.cnfU", 6.0, "6,6,6,0,6", "1.00,1.00,1.00,0.00,1.00"),
    ("chvatal_6_5.cnfW", 1.1, "2.28,2.28,2.28,0,2.28", "2.07,2.07,2.07,0.00,2.07"),
    ("school_9_11__0.cnfU", 4.0, "4,5,4.85,0.68,6", "1.00,1.25,1.21,0.17,1.50"),
    ("school_9_16.cnfU", 5.0, "6,6,6,0,6", "1.20,1.20,1.20,0.00,1.20"),
    ("school_9_16.cnfW", 10.0, "10,10.5,10.57,0.54,11.5", "1.00,1.05,1.06,0.05,1.15"),
    ("school_19_20.cnfW", 11.5, "11.5,13.5,13.39,0.91,15.5", "1.00,1.17,1.16,0.08,1.35"),
];

fn parse_stats(s: &str) -> FiveStats {
    let v: Vec<f64> = s.split(',').map(|x| x.parse().unwrap()).collect();
    FiveStats { min: v[0], median: v[1], mean: v[2], sd: v[3], max: v[4] }
}

#[test]
fn value_strings_round_trip() {
    for &(name, _, values, _) in ROWS {
        assert_eq!(parse_stats(values).value_string(), values, "{name}");
    }
}

/// Ratios use the displayed values, with exact ties such as 9/8 rounded
/// to even.
#[test]
fn ratio_strings_follow_from_values() {
    for &(name, bkv, values, ratios) in ROWS {
        assert_eq!(parse_stats(values).ratio_string(bkv), ratios, "{name}");
    }
}

#[test]
fn ratio_bands_over_all_rows() {
    let summaries: Vec<DistributionSummary> = ROWS
        .iter()
        .map(|&(name, bkv, values, _)| DistributionSummary {
            instance_name: name.into(),
            num_seeds: 1000,
            histogram: Vec::new(),
            stats: parse_stats(values),
            bkv: Some(bkv),
            ratio_stats: None,
            replicas: Vec::new(),
        })
        .collect();
    assert_eq!(summaries.len(), 37);
    assert_eq!(
        ratio_bucket_report(&summaries).unwrap(),
        RatioBuckets { optimal: 12, near: 18, far: 7, below_bkv: 0 }
    );
}
