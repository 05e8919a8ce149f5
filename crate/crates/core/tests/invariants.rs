mod common;

use mustafin::components::{decompose, structural_checks};
use mustafin::degeneration::{build_degeneration, generic_fiber_check, FlagType};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn apartment_configurations(seed in any::<u64>(), d in 2usize..=3, n in 1usize..=3, f in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let flags = common::flag_types(d);
        let flag = flags[f % flags.len()].clone();
        let config = common::diagonal_config(d, n, 2, &mut rng);
        let deg = build_degeneration(&config, &flag).unwrap();
        let report = structural_checks(&decompose(&deg).unwrap());
        prop_assert!(report.passed(), "{} {}: {:?}", config, flag, report.failures);
    }

    #[test]
    fn sheared_pairs(seed in any::<u64>(), d in 2usize..=3, f in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let flags = common::flag_types(d);
        let flag = flags[f % flags.len()].clone();
        let config = common::sheared_pair(d, 2, &mut rng);
        let deg = build_degeneration(&config, &flag).unwrap();
        prop_assert!(generic_fiber_check(&deg, seed).unwrap().passed);
        let report = structural_checks(&decompose(&deg).unwrap());
        prop_assert!(report.passed(), "{} {}: {:?}", config, flag, report.failures);
    }
}

#[test]
fn projective_three_space() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let flag = FlagType::projective(4).unwrap();
    for config in [common::diagonal_config(4, 3, 1, &mut rng), common::sheared_pair(4, 2, &mut rng)] {
        let deg = build_degeneration(&config, &flag).unwrap();
        let report = structural_checks(&decompose(&deg).unwrap());
        assert!(report.passed(), "{config}: {:?}", report.failures);
    }
}
