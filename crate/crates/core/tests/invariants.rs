//! Cross-module property tests.

use mlent::schmidt::{lu_overlap_bound, schmidt_spectrum, SchmidtSpectrum};
use mlent::statevec::{Bipartition, FactorizationSpec, PureState};
use mlent::tableaux::{arrangement_from_tableau, enumerate_syt};
use num_complex::Complex64;
use proptest::prelude::*;

fn arb_state(dims: Vec<usize>) -> impl Strategy<Value = PureState> {
    let n: usize = dims.iter().product();
    proptest::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n).prop_filter_map(
        "nonzero vector",
        move |parts| {
            let amps: Vec<Complex64> =
                parts.iter().map(|&(re, im)| Complex64::new(re, im)).collect();
            let norm: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
            if norm < 1e-6 {
                return None;
            }
            Some(PureState::new(dims.clone(), amps, true).unwrap())
        },
    )
}

fn arb_spectrum(len: usize) -> impl Strategy<Value = SchmidtSpectrum> {
    proptest::collection::vec(0.0f64..1.0, len).prop_filter_map("nonzero", |v| {
        let norm: f64 = v.iter().map(|x| x * x).sum();
        if norm < 1e-6 {
            return None;
        }
        Some(SchmidtSpectrum::from_unsorted(v).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn regroup_merge_round_trip(s in arb_state(vec![4, 6])) {
        let spec = FactorizationSpec::new(vec![vec![2, 2], vec![2, 3]]).unwrap();
        let back = s.regroup(&spec).unwrap().merge(&spec).unwrap();
        prop_assert_eq!(s.amps(), back.amps());
    }

    #[test]
    fn permute_round_trip(s in arb_state(vec![2, 3, 4])) {
        let perm = [2usize, 0, 1];
        let mut inverse = [0usize; 3];
        for (k, &p) in perm.iter().enumerate() {
            inverse[p] = k;
        }
        let back = s.permute_parties(&perm).unwrap().permute_parties(&inverse).unwrap();
        prop_assert_eq!(s.amps(), back.amps());
        prop_assert_eq!(s.dims(), back.dims());
    }

    #[test]
    fn schmidt_spectrum_is_normalized_and_sorted(s in arb_state(vec![4, 4])) {
        let cut = Bipartition::new(&[0], 2).unwrap();
        let spec = schmidt_spectrum(&s, &cut).unwrap();
        let sq: f64 = spec.coeffs().iter().map(|c| c * c).sum();
        prop_assert!((sq - 1.0).abs() < 1e-10);
        for w in spec.coeffs().windows(2) {
            prop_assert!(w[0] >= w[1]);
        }
    }

    #[test]
    fn reduced_state_is_unit_trace_psd(s in arb_state(vec![2, 2, 3])) {
        for keep in [vec![0usize], vec![1], vec![2], vec![0, 2]] {
            let rho = s.reduced(&keep).unwrap();
            prop_assert!((rho.trace() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn overlap_bound_dominates_plain_overlap(
        a in arb_state(vec![3, 3]),
        b in arb_state(vec![3, 3]),
    ) {
        let cut = Bipartition::new(&[0], 2).unwrap();
        let bound = lu_overlap_bound(
            &schmidt_spectrum(&a, &cut).unwrap(),
            &schmidt_spectrum(&b, &cut).unwrap(),
        );
        let plain = a.overlap(&b).unwrap().norm();
        prop_assert!(plain <= bound + 1e-9);
    }

    #[test]
    fn arrangements_preserve_the_coefficient_multiset(spec in arb_spectrum(6)) {
        for t in enumerate_syt(2, 3).unwrap() {
            let a = arrangement_from_tableau(&spec, &t).unwrap();
            let mut entries = a.entries().to_vec();
            entries.sort_by(|x, y| y.partial_cmp(x).unwrap());
            for (e, c) in entries.iter().zip(spec.coeffs()) {
                prop_assert!((e - c).abs() < 1e-15);
            }
        }
    }

    #[test]
    fn max_overlap_bounded_by_one_and_largest_coeff(spec in arb_spectrum(4)) {
        let mo = mlent::decompose::bipartite_max_overlap(&spec, 2, 2).unwrap();
        prop_assert!(mo.value <= 1.0 + 1e-12);
        prop_assert!(mo.value >= spec.coeffs()[0] - 1e-12);
    }
}
