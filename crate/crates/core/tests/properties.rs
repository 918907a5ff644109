use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

use spectral_core::ads3::{
    casimir_value, classify, inf_char, surface_to_ads3, type1_spectrum, SL2Rep, Sign,
};
use spectral_core::catalog::{
    casimir_scalar_on_tau, enumerate_fiber_types, fiber_shift, group_manifold_sl2r, so4m2_u2m1,
    TauParam,
};
use spectral_core::hcparam::{eta_involution, EigenvalueParam, InfinitesimalCharacter};
use spectral_core::qarith::{dot, rat};
use spectral_core::spectra::{assemble_spectrum, ChiData, DiscGammaLEntry, Filter, SpectrumType};
use spectral_core::transfer::{transfer_lambda, transfer_nu, ScalarTransfer};
use spectral_core::weyl::{
    canonical_representative, orbit_enumerate, orbit_equal, weyl_order, Family, RootSystemType,
};
use spectral_core::{GaussianRational, ParamVector};

fn q() -> impl Strategy<Value = BigRational> {
    (-12i64..=12, 1i64..=6).prop_map(|(n, d)| rat(n, d))
}

fn gq() -> impl Strategy<Value = GaussianRational> {
    prop_oneof![
        3 => q().prop_map(GaussianRational::real),
        1 => (q(), q()).prop_map(|(a, b)| GaussianRational::new(a, b)),
    ]
}

/// Coordinates drawn from a small pool so that repeats and zeros are common.
fn coord_vec(len: usize) -> impl Strategy<Value = ParamVector> {
    let pool = prop_oneof![
        2 => Just(GaussianRational::zero()),
        2 => (-3i64..=3).prop_map(GaussianRational::from_int),
        3 => gq(),
    ];
    proptest::collection::vec(pool, len).prop_map(ParamVector::new)
}

fn root_type() -> impl Strategy<Value = RootSystemType> {
    (0usize..5, 1usize..=4).prop_filter_map("D needs rank 2", |(f, r)| {
        let family = [Family::A, Family::B, Family::C, Family::D, Family::BC][f];
        RootSystemType::new(family, r).ok()
    })
}

fn typed_vec() -> impl Strategy<Value = (RootSystemType, ParamVector)> {
    root_type().prop_flat_map(|t| (Just(t), coord_vec(t.ambient_dim())))
}

/// Every image of `v` under the Weyl group, by brute force over all
/// permutations and sign patterns.
fn oracle_orbit(v: &ParamVector, t: RootSystemType) -> BTreeSet<ParamVector> {
    fn perms(n: usize) -> Vec<Vec<usize>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(n - 1) {
            for k in 0..n {
                let mut p = p.clone();
                p.insert(k, n - 1);
                out.push(p);
            }
        }
        out
    }
    let n = v.len();
    let signed = t.family() != Family::A;
    let mut out = BTreeSet::new();
    for p in perms(n) {
        for mask in 0u32..(if signed { 1 << n } else { 1 }) {
            if t.family() == Family::D && mask.count_ones() % 2 == 1 {
                continue;
            }
            let w: ParamVector = p
                .iter()
                .enumerate()
                .map(|(k, &src)| {
                    let x = v[src].clone();
                    if mask >> k & 1 == 1 {
                        -x
                    } else {
                        x
                    }
                })
                .collect();
            out.insert(w);
        }
    }
    out
}

fn gm_chi(hc: GaussianRational, k: i64) -> InfinitesimalCharacter {
    InfinitesimalCharacter::from_coords(
        &ParamVector::new(vec![hc]),
        &ParamVector::from_ints(&[k]),
        &group_manifold_sl2r(),
    )
    .unwrap()
}

fn partition(m: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(0i64..=6, m).prop_map(|mut js| {
        js.sort_unstable_by(|a, b| b.cmp(a));
        js
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms(a in gq(), b in gq(), c in gq()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &(-&a), GaussianRational::zero());
        prop_assert_eq!(&a * &GaussianRational::one(), a.clone());
        match a.inv() {
            Some(inv) => prop_assert_eq!(&a * &inv, GaussianRational::one()),
            None => prop_assert!(a.is_zero()),
        }
    }

    #[test]
    fn lex_order_is_total(a in gq(), b in gq(), c in gq()) {
        prop_assert_eq!(a.cmp(&b), b.cmp(&a).reverse());
        prop_assert_eq!(a == b, a.cmp(&b).is_eq());
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
    }

    #[test]
    fn text_and_wire_round_trip(a in gq()) {
        prop_assert_eq!(a.to_string().parse::<GaussianRational>().unwrap(), a.clone());
        let wire = serde_json::to_string(&a).unwrap();
        prop_assert_eq!(serde_json::from_str::<GaussianRational>(&wire).unwrap(), a);
    }

    #[test]
    fn dot_is_symmetric_bilinear(u in coord_vec(3), v in coord_vec(3), w in coord_vec(3), s in gq(), scale in q()) {
        prop_assert_eq!(dot(&u, &v, &scale).unwrap(), dot(&v, &u, &scale).unwrap());
        let sv: ParamVector = v.iter().map(|x| &s * x).collect();
        let lhs = dot(&u.add(&sv).unwrap(), &w, &scale).unwrap();
        let rhs = dot(&u, &w, &scale).unwrap() + &s * &dot(&v, &w, &scale).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn canonical_rep_matches_oracle((t, v) in typed_vec()) {
        let rep = canonical_representative(&v, t).unwrap();
        let orbit = oracle_orbit(&v, t);
        prop_assert_eq!(&rep, orbit.iter().next_back().unwrap());
        prop_assert_eq!(canonical_representative(&rep, t).unwrap(), rep.clone());
        for w in orbit.iter().take(12) {
            prop_assert_eq!(canonical_representative(w, t).unwrap(), rep.clone());
        }
        let size = BigInt::from(orbit.len()).to_biguint().unwrap();
        prop_assert!((weyl_order(t) % size).is_zero());
        prop_assert_eq!(orbit, orbit_enumerate(&v, t).unwrap());
    }

    #[test]
    fn minus_one_in_signed_types((t, v) in typed_vec()) {
        if matches!(t.family(), Family::B | Family::C | Family::BC) {
            prop_assert!(orbit_equal(&v, &-&v, t).unwrap());
        }
    }

    #[test]
    fn laplacian_constant_on_orbits(x in coord_vec(2), m in 1u32..=2) {
        let case = so4m2_u2m1(m).unwrap();
        let t = case.g_weyl().unwrap();
        let v: ParamVector = x.iter().take(m as usize).cloned().collect();
        let base = EigenvalueParam::from_coords(&v, &case).unwrap().laplacian(&case).unwrap();
        for w in oracle_orbit(&v, t) {
            let p = EigenvalueParam::from_coords(&w, &case).unwrap();
            prop_assert_eq!(p.laplacian(&case).unwrap(), base.clone());
        }
    }

    #[test]
    fn eta_is_an_involution(v in coord_vec(4), hc in gq(), k in -5i64..=5) {
        let case = so4m2_u2m1(2).unwrap();
        let chi = InfinitesimalCharacter::from_coords(&v, &ParamVector::default(), &case).unwrap();
        prop_assert_eq!(eta_involution(&chi).unwrap(), chi.clone());
        let chi = gm_chi(hc, k);
        prop_assert_eq!(eta_involution(&eta_involution(&chi).unwrap()).unwrap(), chi);
    }

    #[test]
    fn transfer_round_trips(m in 1usize..=3, x in coord_vec(3), seed in any::<u64>()) {
        let case = so4m2_u2m1(m as u32).unwrap();
        let js: Vec<i64> = {
            let mut js: Vec<i64> = (0..m).map(|i| ((seed >> (8 * i)) % 7) as i64).collect();
            js.sort_unstable_by(|a, b| b.cmp(a));
            js
        };
        let tau = TauParam::from_ints(&case, &js).unwrap();
        let v: ParamVector = x.iter().take(m).cloned().collect();
        let lambda = EigenvalueParam::from_coords(&v, &case).unwrap();
        let nu = transfer_nu(&lambda, &tau, &case).unwrap();
        let back = transfer_lambda(&nu, &tau, &case).unwrap();
        prop_assert_eq!(&back, &lambda);
        prop_assert_eq!(transfer_nu(&back, &tau, &case).unwrap(), nu.clone());

        // ν of an orbit-mate is the same class
        let w: ParamVector = v.iter().rev().map(|c| -c).collect();
        let mate = EigenvalueParam::from_coords(&w, &case).unwrap();
        prop_assert_eq!(transfer_nu(&mate, &tau, &case).unwrap(), nu.clone());

        // t_λ = a·χ(C_L) + c(τ)
        let st = ScalarTransfer::for_case(&case).unwrap();
        let via_l = nu.casimir(&case).unwrap().scale(st.a()) + st.c(&tau).unwrap();
        prop_assert_eq!(lambda.laplacian(&case).unwrap(), via_l);
    }

    #[test]
    fn quadratic_identity(m in 1usize..=3, x in coord_vec(3), js in partition(3)) {
        let case = so4m2_u2m1(m as u32).unwrap();
        let js = &js[..m];
        let tau = TauParam::from_ints(&case, js).unwrap();
        let v: ParamVector = x.iter().take(m).cloned().collect();
        let lambda = EigenvalueParam::from_coords(&v, &case).unwrap();
        let nu = transfer_nu(&lambda, &tau, &case).unwrap();
        let one = BigRational::one();
        let lhs = dot(nu.rep(), nu.rep(), &one).unwrap() - dot(&v, &v, &one).unwrap().scale(&rat(1, 4));
        let expected: BigRational = js
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                let s = rat(2 * j + 4 * m as i64 - 4 * (i as i64 + 1) + 1, 2);
                &s * &s
            })
            .sum();
        prop_assert_eq!(lhs, GaussianRational::real(expected));
    }

    #[test]
    fn group_manifold_round_trip(hc in gq(), k in -6i64..=6) {
        let gm = group_manifold_sl2r();
        let tau = TauParam::from_ints(&gm, &[k]).unwrap();
        let lambda = EigenvalueParam::from_coords(&ParamVector::new(vec![hc.clone()]), &gm).unwrap();
        let nu = transfer_nu(&lambda, &tau, &gm).unwrap();
        prop_assert_eq!(&nu, &gm_chi(hc.clone(), k));
        prop_assert_eq!(transfer_lambda(&nu, &tau, &gm).unwrap(), lambda.clone());
        prop_assert_eq!(lambda.laplacian(&gm).unwrap(), casimir_value(&hc));
        let st = ScalarTransfer::for_case(&gm).unwrap();
        prop_assert_eq!(nu.casimir(&gm).unwrap().scale(st.a()) + st.c(&tau).unwrap(), casimir_value(&hc));
    }

    #[test]
    fn casimir_value_is_even(h in gq()) {
        prop_assert_eq!(casimir_value(&h), casimir_value(&-&h));
    }

    #[test]
    fn unitary_dual_ranges(num in 0i64..=200, den in 1i64..=20, lam in 1i64..=19) {
        let p = SL2Rep::principal(rat(num, den), Sign::Plus).unwrap();
        let v = casimir_value(&inf_char(&p));
        prop_assert!(v.is_real() && *v.re() <= -rat(1, 4));
        let c = SL2Rep::complementary(rat(lam, 20)).unwrap();
        let v = casimir_value(&inf_char(&c));
        prop_assert!(v.is_real() && *v.re() <= BigRational::zero());
    }

    #[test]
    fn type_one_lattice(kmax in 0u64..40, k0 in 0u64..45, minus_one in any::<bool>()) {
        let values = type1_spectrum(kmax, minus_one, k0);
        prop_assert!(values.windows(2).all(|w| w[0] < w[1]));
        for v in &values {
            prop_assert!(classify(v, true).type_one_candidate());
        }
        if k0 > kmax {
            prop_assert!(values.is_empty());
        }
    }

    #[test]
    fn surface_values_are_type_two(num in 1i64..=500, den in 1i64..=30) {
        let t = surface_to_ads3(&rat(num, den)).unwrap();
        let c = classify(&t, true);
        prop_assert!(c.type_two_candidate && !c.type_one_candidate());
    }

    #[test]
    fn filters_partition(specs in proptest::collection::vec((gq(), -3i64..=3, any::<bool>()), 0..12)) {
        let gm = group_manifold_sl2r();
        let entries: Vec<DiscGammaLEntry> = specs
            .iter()
            .enumerate()
            .map(|(n, (hc, k, d))| DiscGammaLEntry {
                label: format!("e{n}"),
                chi: ChiData::Param(gm_chi(hc.clone(), *k)),
                compatible_taus: vec![TauParam::from_ints(&gm, &[*k]).unwrap()],
                is_hc_discrete: *d,
            })
            .collect();
        let all = assemble_spectrum(&entries, &gm, Filter::All).unwrap();
        let one = assemble_spectrum(&entries, &gm, Filter::I).unwrap();
        let two = assemble_spectrum(&entries, &gm, Filter::II).unwrap();
        prop_assert_eq!(all.len(), entries.len());
        prop_assert!(one.iter().all(|e| e.type_tag == SpectrumType::I));
        prop_assert!(two.iter().all(|e| e.type_tag == SpectrumType::II));
        let mut merged: Vec<_> = one.into_iter().chain(two).collect();
        let key = |e: &spectral_core::spectra::SpectrumEntry| (e.source_label.clone(), e.tau.clone());
        merged.sort_by_key(key);
        let mut sorted_all = all.clone();
        sorted_all.sort_by_key(key);
        prop_assert_eq!(merged, sorted_all);
        for e in &all {
            let source = &entries[e.source_label[1..].parse::<usize>().unwrap()];
            prop_assert_eq!(e.type_tag == SpectrumType::I, source.is_hc_discrete);
            let ChiData::Param(chi) = &source.chi else { unreachable!() };
            prop_assert_eq!(&transfer_nu(e.lambda.as_ref().unwrap(), &e.tau, &gm).unwrap(), chi);
        }
    }
}

/// Number of weakly decreasing `m`-tuples in `[0, b]`, counted directly.
fn count_partitions(m: usize, b: u64) -> usize {
    fn rec(m: usize, cap: u64) -> usize {
        if m == 0 {
            1
        } else {
            (0..=cap).map(|j| rec(m - 1, j)).sum()
        }
    }
    rec(m, b)
}

#[test]
fn fiber_enumeration_counts_and_order() {
    for m in 1..=3u32 {
        let case = so4m2_u2m1(m).unwrap();
        for b in 0..=4 {
            let taus = enumerate_fiber_types(&case, b).unwrap();
            assert_eq!(taus.len(), count_partitions(m as usize, b));
            let ints: Vec<Vec<i64>> = taus.iter().map(TauParam::to_ints).collect();
            assert!(ints.windows(2).all(|w| w[0] < w[1]));
            assert!(taus[0].is_trivial());
            assert!(casimir_scalar_on_tau(&taus[0], &case).unwrap().is_zero());
        }
    }
    let gm = group_manifold_sl2r();
    assert_eq!(enumerate_fiber_types(&gm, 3).unwrap().len(), 7);
}

#[test]
fn fiber_casimir_grows_along_chains() {
    // raising one entry of τ strictly raises the Casimir
    for m in 1..=3usize {
        let case = so4m2_u2m1(m as u32).unwrap();
        for tau in enumerate_fiber_types(&case, 4).unwrap() {
            let js = tau.to_ints();
            for i in 0..m {
                if i == 0 || js[i] < js[i - 1] {
                    let mut up = js.clone();
                    up[i] += 1;
                    let up = TauParam::from_ints(&case, &up).unwrap();
                    let a = casimir_scalar_on_tau(&tau, &case).unwrap();
                    let b = casimir_scalar_on_tau(&up, &case).unwrap();
                    assert!(a < b, "{tau} vs {up}");
                    assert!(fiber_shift(&up, &case).unwrap() < fiber_shift(&tau, &case).unwrap());
                }
            }
        }
    }
}

#[test]
fn rho_of_g_maps_to_rho_of_l() {
    for m in 1..=3u32 {
        let case = so4m2_u2m1(m).unwrap();
        let g = case.g_form().unwrap();
        let l = case.l_form().unwrap();
        let lambda = EigenvalueParam::from_coords(&g.rho, &case).unwrap();
        let nu = transfer_nu(&lambda, &TauParam::trivial(&case), &case).unwrap();
        assert_eq!(nu.rep(), &l.rho);
        assert!(lambda.laplacian(&case).unwrap().is_zero());
    }
}
