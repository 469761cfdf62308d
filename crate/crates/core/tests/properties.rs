//! Invariants of the classification pipeline.

use proptest::prelude::*;

use csbm_attention::attention::{attention_coefficients, build_clean_spec, AttentionSpec};
use csbm_attention::convolution::{attention_convolve, attention_pipeline, build_classifier, classify};
use csbm_attention::diagnostics::check_degree_concentration;
use csbm_attention::model::{sample_csbm, CsbmParams, FeatureMatrix, GraphSample};

fn params() -> impl Strategy<Value = (CsbmParams, u64)> {
    ((2usize..=40).prop_map(|k| 2 * k), 0.05f64..0.95, 0.05f64..0.95, 0.05f64..2.0, any::<u64>()).prop_filter_map(
        "p must differ from q",
        |(n, p, q, mu, seed)| {
            (p != q).then(|| (CsbmParams::new(n, p, q, vec![mu, 0.0, 0.0], vec![1.0, 0.5], 0.3, 0.2), seed))
        },
    )
}

fn with_node_features(s: &GraphSample, x: Vec<f64>) -> GraphSample {
    GraphSample::from_parts(
        s.labels.clone(),
        s.edges.clone(),
        FeatureMatrix::from_rows(s.n(), s.node_features.cols(), x).unwrap(),
        s.edge_features.clone(),
    )
    .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn scaling_features_scales_scores((p, seed) in params(), c in 0.1f64..10.0) {
        let s = sample_csbm(&p, seed).unwrap();
        let spec = build_clean_spec(&p).unwrap();
        let clf = build_classifier(&p).unwrap();
        let (gamma, base) = attention_pipeline(&s, &spec, &clf).unwrap();
        let scaled = with_node_features(&s, s.node_features.as_slice().iter().map(|v| v * c).collect());
        let scores = attention_convolve(&scaled, &gamma, &clf).unwrap();
        for (a, b) in scores.iter().zip(&base.scores) {
            prop_assert!((a - c * b).abs() <= 1e-12 * (1.0 + (c * b).abs()));
        }
        let relabeled = classify(scores, &s.labels, clf.threshold).unwrap();
        for (i, (&a, &b)) in base.scores.iter().zip(&relabeled.scores).enumerate() {
            if a.abs() > 1e-12 {
                prop_assert_eq!(relabeled.predicted[i], base.predicted[i], "node {} score {} vs {}", i, a, b);
            }
        }
    }

    #[test]
    fn swapping_labels_and_negating_mean_negates_scores((p, seed) in params()) {
        let s = sample_csbm(&p, seed).unwrap();
        let clf = build_classifier(&p).unwrap();
        let gamma = attention_coefficients(&s, &AttentionSpec::Uniform).unwrap();
        let scores = attention_convolve(&s, &gamma, &clf).unwrap();

        let mut flipped_params = p.clone();
        flipped_params.mu = p.mu.iter().map(|m| -m).collect();
        let flipped_clf = build_classifier(&flipped_params).unwrap();
        let swapped = GraphSample::from_parts(
            s.labels.iter().map(|l| 1 - l).collect(),
            s.edges.clone(),
            s.node_features.clone(),
            s.edge_features.clone(),
        )
        .unwrap();
        let flipped = attention_convolve(&swapped, &gamma, &flipped_clf).unwrap();
        for (a, b) in scores.iter().zip(&flipped) {
            prop_assert_eq!(*a, -*b);
        }
    }

    #[test]
    fn degree_check_ignores_features((p, seed) in params()) {
        let s = sample_csbm(&p, seed).unwrap();
        let zeroed = with_node_features(&s, vec![0.0; s.node_features.as_slice().len()]);
        prop_assert_eq!(
            check_degree_concentration(&s, &p, 4.0),
            check_degree_concentration(&zeroed, &p, 4.0)
        );
    }

    #[test]
    fn sampling_is_reproducible((p, seed) in params()) {
        prop_assert_eq!(sample_csbm(&p, seed).unwrap(), sample_csbm(&p, seed).unwrap());
    }
}
