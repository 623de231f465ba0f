use std::cmp::Ordering;

use proptest::prelude::*;

use conifold_spectra::flat::ops::{hessian, times_metric};
use conifold_spectra::flat::{laplacian, partial_derivative, trace, FieldExpr, RadialPoly};
use conifold_spectra::indicial::{
    box_l_spectrum, indicial_set_bianchi, indicial_set_essential, indicial_set_full, reconstructs, weight_set,
};
use conifold_spectra::link::{
    load_spectrum, sphere_link, sphere_link_to_degree, to_document, EigenvalueEntry, EndKind, LinkSpectrum,
};
use conifold_spectra::numeric::{q, Complex, Real, Scalar, Q};
use conifold_spectra::rates::{
    bootstrap_decay, bootstrap_length_bound, e_minus_set, end_order, is_resonance_dominated, linear_stability,
};
use conifold_spectra::report::build_report;
use conifold_spectra::spectral::{dual_weight, eta_weight, xi_pair, Dimension, Weight};

fn dim(n: u32) -> Dimension {
    Dimension::new(n).unwrap()
}

fn rational(lo: i64, hi: i64) -> impl Strategy<Value = Q> {
    (lo * 64..=hi * 64, 1i64..=64).prop_map(|(num, den)| Q::new(num.into(), den.into()))
}

/// A sphere link whose κ list is replaced by `extra` below the first sphere value.
fn sphere_with_kappas(n: u32, extra: Vec<Q>) -> LinkSpectrum {
    let mut link = sphere_link_to_degree(dim(n), true, 6).unwrap();
    let mut entries: Vec<_> = extra.into_iter().map(|k| EigenvalueEntry::new(k, None)).collect();
    entries.append(&mut link.tt_einstein.entries);
    entries.sort_by(|a, b| a.value.cmp_exact(&b.value));
    entries.dedup_by(|a, b| a.value == b.value);
    link.tt_einstein.entries = entries;
    link
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn xi_pair_solves_eta(n in 3u32..=12, nu in rational(-60, 500)) {
        let d = dim(n);
        let (p, m) = xi_pair(d, &Scalar::Exact(nu.clone()));
        let target = Complex::real(Real::rational(nu.clone()));
        prop_assert_eq!(eta_weight(d, &p), target.clone());
        prop_assert_eq!(eta_weight(d, &m), target.clone());
        prop_assert_eq!(p.value().mul(&m.value()), target.neg());
        prop_assert_eq!(p.value().add(&m.value()), Complex::real(Real::int(2 - n as i64)));
    }

    #[test]
    fn real_or_centred(n in 3u32..=12, nu in rational(-60, 60)) {
        let d = dim(n);
        let (p, m) = xi_pair(d, &Scalar::Exact(nu.clone()));
        if nu >= d.resonance_value() {
            prop_assert!(p.is_real() && m.is_real());
        } else {
            let centre = Real::rational(-d.half_gap());
            prop_assert_eq!(&p.re, &centre);
            prop_assert_eq!(&m.re, &centre);
        }
    }

    #[test]
    fn duality_swaps_branches(n in 3u32..=12, nu in rational(-60, 200)) {
        let d = dim(n);
        let (p, m) = xi_pair(d, &Scalar::Exact(nu));
        prop_assert_eq!(dual_weight(d, &p), m.clone());
        prop_assert_eq!(dual_weight(d, &dual_weight(d, &m)), m);
    }

    #[test]
    fn xi_monotone_above_window(n in 3u32..=12, a in rational(0, 200), b in rational(0, 200)) {
        prop_assume!(a != b);
        let d = dim(n);
        let res = d.resonance_value();
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        let (lo, hi) = (&res + lo, &res + hi);
        let (p1, m1) = xi_pair(d, &Scalar::Exact(lo));
        let (p2, m2) = xi_pair(d, &Scalar::Exact(hi));
        prop_assert_eq!(p1.re.cmp_tol(&p2.re, 0.0), Ordering::Less);
        prop_assert_eq!(m1.re.cmp_tol(&m2.re, 0.0), Ordering::Greater);
    }

    #[test]
    fn float_path_tracks_exact(n in 3u32..=12, nu in rational(-60, 500)) {
        let d = dim(n);
        let (pe, _) = xi_pair(d, &Scalar::Exact(nu.clone()));
        let (pf, _) = xi_pair(d, &Scalar::Float(conifold_spectra::numeric::q_to_f64(&nu)));
        prop_assert!((pe.re.to_f64() - pf.re.to_f64()).abs() < 1e-9);
        prop_assert!((pe.im.to_f64().abs() - pf.im.to_f64().abs()).abs() < 1e-6);
    }

    #[test]
    fn stable_links_have_slow_enough_rates(
        n in 4u32..=8,
        kappas in prop::collection::vec(rational(-20, 20), 0..4),
    ) {
        let link = sphere_with_kappas(n, kappas);
        let d = link.n;
        let set = e_minus_set(&link).unwrap();
        let min = set.min().unwrap().value.clone();
        let half = Real::rational(d.half_gap());
        let zero = Scalar::int(0);
        let res = Scalar::Exact(d.resonance_value());
        let in_window = link.tt_einstein.values().any(|k| *k >= res && *k < zero);
        let stable = linear_stability(&link).unwrap().is_stable();
        if stable && !in_window {
            prop_assert_ne!(min.cmp_tol(&half, 0.0), Ordering::Less);
        }
        if !stable {
            prop_assert_ne!(min.cmp_tol(&half, 0.0), Ordering::Greater);
        }
        let negative = link.tt_einstein.values().any(|k| k.cmp_exact(&Scalar::int(0)) == Ordering::Less);
        // κ = 0 gives ξ₋ = n − 2 exactly, so the comparison is strict.
        let small = min.cmp_tol(&Real::int(d.as_i64() - 2), 0.0) == Ordering::Less;
        prop_assert_eq!(negative, small);
        prop_assert!(set.elements.iter().all(|e| e.value.cmp_tol(&Real::zero(), 0.0) == Ordering::Greater));
        let ac = end_order(&link, EndKind::AC).unwrap();
        prop_assert_eq!(ac.weak, is_resonance_dominated(&link).unwrap());
    }

    #[test]
    fn window_classification_is_per_entry(
        n in 4u32..=8,
        kappa in rational(-20, 20),
        shift in rational(1, 30),
    ) {
        // Moving a second κ around above the window leaves the first one's part untouched.
        let base = sphere_with_kappas(n, vec![kappa.clone()]);
        let moved = sphere_with_kappas(n, vec![kappa.clone(), shift]);
        let part_of = |link: &LinkSpectrum| {
            e_minus_set(link).unwrap().elements.into_iter()
                .filter(|e| e.root.source_value == Scalar::Exact(kappa.clone())
                    && e.root.family == conifold_spectra::indicial::Family::TtKappa)
                .map(|e| e.part)
                .collect::<Vec<_>>()
        };
        prop_assert_eq!(part_of(&base), part_of(&moved));
    }

    #[test]
    fn bootstrap_terminates_within_bound(
        eps in rational(0, 5).prop_filter("positive", |e| *e > q(0)),
        gap in rational(0, 20).prop_filter("positive", |g| *g > q(0)),
        extra in rational(0, 500),
    ) {
        let alpha0 = q(2) * &eps + gap;
        let target = &alpha0 + extra;
        let seq = bootstrap_decay(&alpha0, &eps, &target).unwrap();
        prop_assert!(seq.len() <= bootstrap_length_bound(&alpha0, &eps, &target));
        prop_assert!(seq.windows(2).all(|w| w[0] < w[1]));
        prop_assert!(seq.last().unwrap() >= &target);
    }

    #[test]
    fn trace_commutes_with_laplacian(
        coeffs in prop::collection::vec(-5i64..=5, 6),
        s in -4i64..=2,
    ) {
        let n = 4;
        let x = |i| RadialPoly::x(n, i);
        let monos = [&x(0) * &x(1), &(&x(2) * &x(2)) * &x(0), x(3), &x(1) * &x(1), RadialPoly::one(n), &x(0) * &x(3)];
        let mut f = RadialPoly::zero(n);
        for (c, m) in coeffs.iter().zip(monos.iter()) {
            f = &f + &m.scale(&q(*c));
        }
        let g = f.mul_r(&q(s));
        let h = &hessian(&FieldExpr::scalar(g.clone())) + &times_metric(&f);
        prop_assert!((&laplacian(&trace(&h)) - &trace(&laplacian(&h))).is_zero());
        // ∂_i commutes with ∂_j.
        let a = partial_derivative(&partial_derivative(&FieldExpr::scalar(g.clone()), 0), 2);
        let b = partial_derivative(&partial_derivative(&FieldExpr::scalar(g), 2), 0);
        prop_assert!((&a - &b).is_zero());
    }
}

/// A stable κ inside the window contributes −ξ₊(κ) ∈ (0, (n−2)/2) to E₋,
/// so stability alone does not bound min E₋ from below by (n−2)/2.
#[test]
fn window_kappa_undercuts_half_gap_on_stable_links() {
    let link = sphere_with_kappas(8, vec![q(-1)]);
    assert!(linear_stability(&link).unwrap().is_stable());
    let min = e_minus_set(&link).unwrap().min().unwrap().value.clone();
    assert_eq!(min.cmp_tol(&Real::int(3), 0.0), Ordering::Less);
    assert_eq!(min.cmp_tol(&Real::zero(), 0.0), Ordering::Greater);
}

#[test]
fn roots_reconstruct_their_eigenvalues() {
    for n in 4u32..=9 {
        let link = sphere_link(dim(n), true).unwrap();
        for root in indicial_set_full(&link).unwrap() {
            assert!(reconstructs(dim(n), &root), "n={n}: {root:?}");
        }
    }
}

#[test]
fn weight_inclusions_hold_on_perturbed_links() {
    for n in 4u32..=7 {
        for kappas in [vec![], vec![q(-1)], vec![Q::new((-7).into(), 3.into()), q(0)], vec![q(-100)]] {
            let link = sphere_with_kappas(n, kappas);
            let wl = weight_set(&indicial_set_full(&link).unwrap());
            let wb = weight_set(&indicial_set_bianchi(&link).unwrap());
            let we = weight_set(&indicial_set_essential(&link).unwrap());
            let within = |small: &[Weight], big: &[Weight]| {
                small.iter().all(|w| big.iter().any(|b| b.cmp_lex(w) == Ordering::Equal))
            };
            assert!(within(&we, &wb) && within(&wb, &wl), "n={n}");
        }
    }
}

#[test]
fn flat_link_contains_expected_weights() {
    for n in 4u32..=9 {
        let link = sphere_link(dim(n), true).unwrap();
        let wl = weight_set(&indicial_set_full(&link).unwrap());
        let we = weight_set(&indicial_set_essential(&link).unwrap());
        assert!(wl.contains(&Weight::int(0)) && wl.contains(&Weight::int(2)));
        assert!(we.contains(&Weight::int(1)));
    }
}

#[test]
fn dropped_entries_carry_reasons() {
    for n in 4u32..=9 {
        let link = sphere_link(dim(n), true).unwrap();
        let spec = box_l_spectrum(&link).unwrap();
        let dropped: Vec<_> = spec.iter().filter_map(|t| t.dropped).collect();
        assert!(!dropped.is_empty());
        assert!(dropped.iter().all(|d| !d.label().is_empty()));
    }
}

#[test]
fn sphere_catalog_formulas() {
    for n in 4u32..=12 {
        let nn = n as i64;
        let link = sphere_link(dim(n), true).unwrap();
        for (i, v) in link.scalar.values().enumerate() {
            let i = i as i64;
            assert_eq!(*v, Scalar::int(i * (i + nn - 2)));
        }
        for (i, v) in link.tt_einstein.values().enumerate() {
            let i = i as i64 + 1;
            assert_eq!(*v, Scalar::int((i + 1) * (i + nn - 1)));
        }
        assert_eq!(link.tt_einstein.entries[0].value, Scalar::int(2 * nn));
        let (p, m) = xi_pair(dim(n), &link.tt_einstein.entries[0].value);
        assert_eq!((p, m), (Weight::int(2), Weight::int(-nn)));
        let mu: Vec<_> = link.coclosed_one_form.values().cloned().collect();
        assert_eq!(mu[0], Scalar::int(nn - 2));
        assert!(mu[1..].iter().all(|m| m.cmp_exact(&Scalar::int(nn - 2)) == Ordering::Greater));
    }
}

#[test]
fn documents_round_trip() {
    for n in 4u32..=6 {
        let link = sphere_link_to_degree(dim(n), true, 4).unwrap();
        let back = load_spectrum(&to_document(&link)).unwrap();
        assert_eq!(back.scalar, link.scalar);
        assert_eq!(back.coclosed_one_form, link.coclosed_one_form);
        assert_eq!(back.tt_einstein, link.tt_einstein);
        assert_eq!(back.n, link.n);
    }
}

#[test]
fn reports_are_deterministic() {
    let link = sphere_link(dim(5), true).unwrap();
    let a = build_report(&link, Some(20)).unwrap();
    let b = build_report(&link, Some(20)).unwrap();
    assert_eq!(a.render_json(), b.render_json());
    assert_eq!(a.render_csv(), b.render_csv());
    assert_eq!(a.render_table(), b.render_table());
}
