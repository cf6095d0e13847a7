use num_traits::Zero;
use proptest::prelude::*;
use rayon::prelude::*;

use seaweed_core::contact::{
    case1_contact, cycle_split, free_diagonal_index, regular_form_from_meander, synthesize_contact,
    two_path_element, two_paths, verify_report, ContactCertificate, OneForm,
};
use seaweed_core::exact::{self, rat};
use seaweed_core::liealg::CoeffForm;
use seaweed_core::meander::{all_parts_even, build_meander, components, index};
use seaweed_core::seaweed::{materialize, materialize_standard, standard_basis, SeaweedSpec};

fn specs_up_to(n: usize) -> Vec<SeaweedSpec> {
    (1..=n).flat_map(SeaweedSpec::all).collect()
}

#[test]
fn composition_pair_counts() {
    for n in 1..=8 {
        assert_eq!(SeaweedSpec::all(n).len(), 1 << (2 * (n - 1)));
    }
}

#[test]
fn closure_and_dimension_formula() {
    specs_up_to(6).par_iter().for_each(|s| {
        let alg = materialize_standard(s).unwrap_or_else(|e| panic!("{s}: {e}"));
        assert_eq!(alg.dim(), s.dimension());
    });
    for s in specs_up_to(7) {
        let tri = |parts: &[usize]| parts.iter().map(|a| a * (a - 1) / 2).sum::<usize>();
        let formula = s.n() - 1 + tri(s.top().parts()) + tri(s.bottom().parts());
        assert_eq!(standard_basis(&s).len(), formula, "{s}");
    }
}

#[test]
fn swap_symmetry() {
    specs_up_to(5).par_iter().for_each(|s| {
        let t = s.swapped();
        assert_eq!(index(s), index(&t), "{s}");
        let a = materialize_standard(s).unwrap().index_randomized(10, 1);
        let b = materialize_standard(&t).unwrap().index_randomized(10, 1);
        assert_eq!(a, b, "{s}");
    });
}

#[test]
fn meander_degree_and_single_cycle_parity() {
    (1..=10).into_par_iter().for_each(|n| {
        for s in SeaweedSpec::all(n) {
            let m = build_meander(&s);
            assert!((1..=n).all(|v| m.degree(v) <= 2), "{s}");
            if components(&m).is_one_cycle() {
                assert!(all_parts_even(&s), "{s}");
            }
        }
    });
}

#[test]
fn index_one_shapes_and_odd_dimension() {
    specs_up_to(8)
        .par_iter()
        .filter(|s| index(s) == 1)
        .for_each(|s| {
            let r = components(&build_meander(s));
            assert!(r.is_two_paths() ^ r.is_one_cycle(), "{s}");
            assert_eq!(s.dimension() % 2, 1, "{s}");
        });
}

#[test]
fn construction_data_exists_up_to_ten() {
    (3..=10).into_par_iter().for_each(|n| {
        for s in SeaweedSpec::all(n) {
            let r = components(&build_meander(&s));
            if r.is_one_cycle() {
                let split = cycle_split(&s).unwrap_or_else(|e| panic!("{s}: {e}"));
                assert_eq!(index(&split.reduced_spec), 0);
            } else if r.is_two_paths() {
                let (p1, p2) = two_paths(&s).unwrap();
                let h = two_path_element(n, &p1, &p2);
                assert!(free_diagonal_index(&s, &h).is_some(), "{s}");
            }
        }
    });
}

#[test]
fn two_path_kernel_and_factorization() {
    specs_up_to(7)
        .par_iter()
        .filter(|s| components(&build_meander(s)).is_two_paths())
        .for_each(|s| {
            let cert = case1_contact(s).unwrap_or_else(|e| panic!("{s}: {e}"));
            let alg = materialize(s, &cert.basis).unwrap();
            let f_bar = regular_form_from_meander(s).coefficients(&cert.basis);
            let kernel = exact::kernel_basis(&alg.kirillov_matrix(&f_bar).unwrap());
            assert_eq!(kernel.len(), 1, "{s}");
            assert!(
                kernel[0][1..].iter().all(|x| x.is_zero()) && !kernel[0][0].is_zero(),
                "{s}"
            );
            assert_eq!(verify_report(&cert).factorization, Some(true), "{s}");
        });
}

/// `[e_ab, e_cd] = δ_bc e_ad - δ_da e_cb` as a list of signed units.
fn unit_bracket((a, b): (usize, usize), (c, d): (usize, usize)) -> Vec<((usize, usize), i64)> {
    let mut out = Vec::new();
    if b == c {
        out.push(((a, d), 1));
    }
    if d == a {
        out.push(((c, b), -1));
    }
    out
}

#[test]
fn removed_units_form_a_heisenberg_algebra() {
    specs_up_to(8)
        .par_iter()
        .filter(|s| s.n() > 2 && components(&build_meander(s)).is_one_cycle())
        .for_each(|s| {
            let split = cycle_split(s).unwrap();
            let gens = &split.heisenberg_generators;
            let m = gens.len();
            assert_eq!(m % 2, 1, "{s}");
            let mut pairing = exact::RatMatrix::zeros(m, m);
            for (x, &g) in gens.iter().enumerate() {
                for (y, &h) in gens.iter().enumerate() {
                    let mut coeff = 0;
                    for (unit, c) in unit_bracket(g, h) {
                        assert_eq!(unit, split.center, "{s}: [{g:?}, {h:?}]");
                        coeff += c;
                    }
                    pairing.set(x, y, rat(coeff));
                }
            }
            assert_eq!(exact::rank(&pairing), m - 1, "{s}");
            let c = gens.iter().position(|&g| g == split.center).unwrap();
            assert!((0..m).all(|y| pairing.get(c, y).is_zero()));
        });
}

#[test]
fn certificates_round_trip_through_json() {
    specs_up_to(6)
        .par_iter()
        .filter(|s| index(s) == 1)
        .for_each(|s| {
            let cert = synthesize_contact(s).unwrap();
            let back = ContactCertificate::from_json(&cert.to_json_pretty()).unwrap();
            assert_eq!(back, cert);
        });
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identity_shift_is_invisible(
        idx in 0usize..16,
        entries in prop::collection::vec(-5i64..=5, 25),
        shift in -9i64..=9,
    ) {
        let s = &SeaweedSpec::all(5)[idx * 13 % 256];
        let basis = standard_basis(s);
        let mut w = OneForm::zero(5);
        for (k, v) in entries.iter().enumerate() {
            w.add_unit(k / 5 + 1, k % 5 + 1, rat(*v));
        }
        let before: CoeffForm = w.coefficients(&basis);
        for k in 1..=5 {
            w.add_unit(k, k, rat(shift));
        }
        prop_assert_eq!(w.coefficients(&basis), before);
    }
}
