use fcc_core::bounds::{ball_volume, lower_bound, sphere_packing_min_r, upper_bound_binary};
use fcc_core::channel::{enumerate_errors, error_count, inject, DEFAULT_ERROR_BUDGET};
use fcc_core::constructions::{bch_systematic, or_scheme, rs_systematic};
use fcc_core::fcc::Builtin;
use fcc_core::formats::{
    parse_function_file, parse_scheme_file, write_function_file, write_scheme_file,
};
use fcc_core::gf::{elems, lagrange_interpolate};
use fcc_core::message::{hamming_distance, rank_to_message, weight};
use fcc_core::search::DEFAULT_NODE_BUDGET;
use fcc_core::{
    builtin_function, exact_redundancy, fcc_decode, find_critical_pair, verify_fcc, DecodeMode,
    Decoder, Elem, Error, FccScheme, Field, FunctionTable, GeneratorMatrix, DEFAULT_BUDGET,
};
use proptest::prelude::*;

const ORDERS: [u64; 8] = [2, 3, 4, 5, 7, 8, 9, 16];

fn field_and_elems() -> impl Strategy<Value = (u64, Vec<u32>)> {
    prop::sample::select(ORDERS.to_vec())
        .prop_flat_map(|q| (Just(q), prop::collection::vec(0..q as u32, 1..=q as usize)))
}

proptest! {
    #[test]
    fn inverse_is_an_involution((q, xs) in field_and_elems()) {
        let f = Field::new(q).unwrap();
        for x in xs.into_iter().filter(|&x| x != 0) {
            let inv = f.inv(Elem(x)).unwrap();
            prop_assert_eq!(f.inv(inv).unwrap(), Elem(x));
            prop_assert_eq!(f.mul(inv, Elem(x)), Elem::ONE);
        }
    }

    #[test]
    fn interpolation_reproduces_points((q, ys) in field_and_elems()) {
        let f = Field::new(q).unwrap();
        let points: Vec<(Elem, Elem)> =
            ys.iter().enumerate().map(|(i, &y)| (Elem(i as u32), Elem(y))).collect();
        let poly = lagrange_interpolate(&f, &points).unwrap();
        prop_assert!(poly.degree().is_none_or(|d| d < points.len()));
        for (x, y) in points {
            prop_assert_eq!(poly.eval(x).unwrap(), y);
        }
    }

    #[test]
    fn systematic_encoding_keeps_message(q in prop::sample::select(vec![2u64, 3, 4, 5]),
                                         k in 1usize..4, t in 1usize..3, seed in any::<u64>()) {
        let scheme = or_scheme(q, k, t).unwrap().scheme;
        let u = rank_to_message(q as u32, k, seed % (q.pow(k as u32)));
        prop_assert_eq!(&scheme.encode(&u).unwrap()[..k], &u[..]);
    }

    #[test]
    fn linear_systematic_codes_do_not_shrink_distances(
        parity in prop::collection::vec(prop::collection::vec(0u32..5, 3), 3),
        a in 0u64..125, b in 0u64..125,
    ) {
        let f = Field::new(5).unwrap();
        let rows: Vec<Vec<Elem>> = parity.into_iter().map(|p| elems(&p)).collect();
        let g = GeneratorMatrix::from_parity(f, &rows).unwrap();
        let (u, v) = (rank_to_message(5, 3, a), rank_to_message(5, 3, b));
        let (cu, cv) = (g.encode(&u).unwrap(), g.encode(&v).unwrap());
        prop_assert!(hamming_distance(&cu, &cv) >= hamming_distance(&u, &v));
        prop_assert_eq!(&cu[..3], &u[..]);
    }

    #[test]
    fn parity_translation_preserves_verdict(
        parities in prop::collection::vec(prop::collection::vec(0u32..3, 2), 9),
        shift in prop::collection::vec(0u32..3, 2),
        labels in prop::collection::vec(0u64..3, 9),
        t in 0usize..3,
    ) {
        let f3 = Field::new(3).unwrap();
        let table: Vec<Vec<Elem>> = parities.iter().map(|p| elems(p)).collect();
        let shifted: Vec<Vec<Elem>> = table
            .iter()
            .map(|p| p.iter().zip(&shift).map(|(&a, &c)| f3.add(a, Elem(c))).collect())
            .collect();
        let func = FunctionTable::new(3, 2, labels).unwrap();
        let a = FccScheme::table(f3.clone(), 2, 2, table).unwrap();
        let b = FccScheme::table(f3, 2, 2, shifted).unwrap();
        let va = verify_fcc(&a, &func, t, DEFAULT_BUDGET).unwrap();
        let vb = verify_fcc(&b, &func, t, DEFAULT_BUDGET).unwrap();
        prop_assert_eq!(va.passed(), vb.passed());
    }

    /// Brute-force verdict over all pairs, equal labels included, must agree
    /// with the verifier that skips equal-label pairs.
    #[test]
    fn equal_label_pairs_never_matter(
        parities in prop::collection::vec(prop::collection::vec(0u32..2, 3), 8),
        labels in prop::collection::vec(0u64..2, 8),
        t in 0usize..3,
    ) {
        let f2 = Field::new(2).unwrap();
        let table: Vec<Vec<Elem>> = parities.iter().map(|p| elems(p)).collect();
        let scheme = FccScheme::table(f2, 3, 3, table).unwrap();
        let func = FunctionTable::new(2, 3, labels.clone()).unwrap();
        let book = scheme.codebook(DEFAULT_BUDGET).unwrap();
        let mut expected = true;
        for i in 0..8 {
            for j in i + 1..8 {
                let d = hamming_distance(&book[i], &book[j]);
                if d <= 2 * t && labels[i] != labels[j] {
                    expected = false;
                }
            }
        }
        prop_assert_eq!(verify_fcc(&scheme, &func, t, DEFAULT_BUDGET).unwrap().passed(), expected);
    }

    #[test]
    fn injected_error_has_exact_weight(seed in any::<u64>(), w in 0usize..=7) {
        let f = Field::new(4).unwrap();
        let c = elems(&[0, 1, 2, 3, 3, 2, 1]);
        let y = inject(&f, &c, w, seed).unwrap();
        let e: Vec<Elem> = y.iter().zip(&c).map(|(&a, &b)| f.sub(a, b)).collect();
        prop_assert_eq!(weight(&e), w);
        prop_assert_eq!(inject(&f, &c, w, seed).unwrap(), y);
    }
}

#[test]
fn error_enumeration_counts_match_closed_form() {
    for n in 0..=8 {
        for t in 0..=3 {
            for q in 2..=5u32 {
                let all: Vec<Vec<Elem>> = enumerate_errors(n, t, q, DEFAULT_ERROR_BUDGET)
                    .unwrap()
                    .collect();
                let mut direct: u128 = 0;
                let mut binom: u128 = 1;
                for j in 0..=t.min(n) {
                    if j > 0 {
                        binom = binom * (n - j + 1) as u128 / j as u128;
                    }
                    direct += binom * u128::from(q - 1).pow(j as u32);
                }
                assert_eq!(all.len() as u128, direct, "n={n} t={t} q={q}");
                assert_eq!(error_count(n, t, q), direct);
                let mut sorted = all.clone();
                sorted.sort();
                sorted.dedup();
                assert_eq!(sorted.len(), all.len(), "duplicates for n={n} t={t} q={q}");
                assert!(all.iter().all(|e| weight(e) <= t.min(n)));
                assert!(all.windows(2).all(|w| weight(&w[0]) <= weight(&w[1])));
            }
        }
    }
}

/// Exhaustive decode guarantee: every message, every error of weight <= t.
fn assert_decodes_everything(scheme: &FccScheme, f: &FunctionTable, t: usize) {
    assert!(verify_fcc(scheme, f, t, DEFAULT_BUDGET).unwrap().passed());
    let decoder = Decoder::new(scheme, f, t, DEFAULT_BUDGET).unwrap();
    let field = scheme.field();
    let errors: Vec<Vec<Elem>> = enumerate_errors(scheme.n(), t, scheme.q(), DEFAULT_ERROR_BUDGET)
        .unwrap()
        .collect();
    for rank in 0..f.values().len() as u64 {
        let c = scheme
            .encode(&rank_to_message(scheme.q(), scheme.k(), rank))
            .unwrap();
        for e in &errors {
            let y: Vec<Elem> = c.iter().zip(e).map(|(&a, &b)| field.add(a, b)).collect();
            let out = decoder.decode(&y, DecodeMode::Strict).unwrap();
            assert_eq!(out.label, f.value(rank));
            assert!(out.within_radius);
        }
    }
}

#[test]
fn verified_schemes_decode_every_correctable_error() {
    let or = or_scheme(3, 3, 1).unwrap().scheme;
    assert_decodes_everything(&or, &builtin_function("or", 3, 3, &[]).unwrap(), 1);

    let rs = rs_systematic(5, 2, 1).unwrap().scheme;
    assert_decodes_everything(&rs, &builtin_function("identity", 5, 2, &[]).unwrap(), 1);

    let bch = bch_systematic(3, 2).unwrap().scheme;
    assert_decodes_everything(
        &bch,
        &builtin_function("hamming_weight", 2, 3, &[]).unwrap(),
        2,
    );

    let f = builtin_function("threshold", 2, 3, &[2]).unwrap();
    let witness = exact_redundancy(&f, 1, DEFAULT_NODE_BUDGET)
        .unwrap()
        .witness;
    assert_decodes_everything(&witness, &f, 1);
}

#[test]
fn decode_examples_for_or_scheme() {
    let scheme = or_scheme(2, 3, 1).unwrap().scheme;
    let f = builtin_function("or", 2, 3, &[]).unwrap();
    // c(001) = 00111, flip the first bit
    let y = elems(&[1, 0, 1, 1, 1]);
    let book = scheme.codebook(DEFAULT_BUDGET).unwrap();
    let dist: Vec<usize> = book.iter().map(|c| hamming_distance(c, &y)).collect();
    // y = c(101); c(001) is at distance 1 and c(000) at 4
    assert_eq!((dist[0], dist[1], dist[5]), (4, 1, 0));
    let out = fcc_decode(&scheme, &f, 1, &y, DecodeMode::Strict, DEFAULT_BUDGET).unwrap();
    assert_eq!((out.label, out.within_radius), (1, true));

    let out = fcc_decode(
        &scheme,
        &f,
        1,
        &elems(&[0; 5]),
        DecodeMode::Strict,
        DEFAULT_BUDGET,
    )
    .unwrap();
    assert_eq!((out.label, out.distance), (0, 0));

    // 11000 is at distance >= 2 from every codeword
    let y = elems(&[1, 1, 0, 0, 0]);
    let dist: Vec<usize> = book.iter().map(|c| hamming_distance(c, &y)).collect();
    assert_eq!(*dist.iter().min().unwrap(), 2);
    assert_eq!(
        fcc_decode(&scheme, &f, 1, &y, DecodeMode::Strict, DEFAULT_BUDGET).unwrap_err(),
        Error::BeyondRadius { distance: 2, t: 1 }
    );
    let out = fcc_decode(&scheme, &f, 1, &y, DecodeMode::BestEffort, DEFAULT_BUDGET).unwrap();
    assert!(!out.within_radius);
    assert_eq!(out.distance, 2);
}

#[test]
fn critical_pair_exists_iff_non_constant() {
    for code in 0u64..256 {
        let f = FunctionTable::new(2, 3, (0..8).map(|i| code >> i & 1).collect()).unwrap();
        let pair = find_critical_pair(&f, DEFAULT_BUDGET).unwrap();
        assert_eq!(pair.is_none(), f.image_size() == 1, "function {code:08b}");
        if let Some((u, v)) = pair {
            assert_eq!(hamming_distance(&u, &v), 1);
            assert_ne!(f.eval(&u).unwrap(), f.eval(&v).unwrap());
        }
    }
}

#[test]
fn constructions_respect_singleton() {
    for (q, k, t) in [(5, 2, 1), (7, 3, 2), (8, 4, 2), (9, 3, 3), (11, 3, 4)] {
        let rep = rs_systematic(q, k, t).unwrap();
        let s = rep.generator().unwrap().summarize(DEFAULT_BUDGET).unwrap();
        assert!(s.d <= s.n - s.k + 1);
        assert_eq!(s.d, 2 * t + 1);
        assert!(s.is_mds && s.is_systematic);
    }
    for (k, t) in [
        (1, 1),
        (2, 1),
        (4, 1),
        (5, 2),
        (7, 2),
        (6, 3),
        (10, 2),
        (11, 1),
    ] {
        let rep = bch_systematic(k, t).unwrap();
        let m = rep.extension_degree.unwrap() as usize;
        assert!(rep.r <= m * t);
        let s = rep.generator().unwrap().summarize(DEFAULT_BUDGET).unwrap();
        assert!(s.d > 2 * t, "bch({k},{t}) d = {}", s.d);
        assert!(s.d <= s.n - s.k + 1);
    }
}

#[test]
fn search_lower_bound_and_mds_region() {
    // q >= k + 2t: every sampled non-constant function has r_f = 2t
    for name in ["or", "identity", "hamming_weight", "threshold"] {
        let aux: &[u64] = if name == "threshold" { &[2] } else { &[] };
        let f = builtin_function(name, 5, 2, aux).unwrap();
        let res = exact_redundancy(&f, 1, DEFAULT_NODE_BUDGET).unwrap();
        assert_eq!(res.r, 2, "{name}");
        assert!(verify_fcc(&res.witness, &f, 1, DEFAULT_BUDGET)
            .unwrap()
            .passed());
    }
    let lin = builtin_function("linear", 5, 2, &[1, 3]).unwrap();
    assert_eq!(exact_redundancy(&lin, 1, DEFAULT_NODE_BUDGET).unwrap().r, 2);
}

#[test]
fn search_is_monotone_in_t_for_ternary_functions() {
    for name in ["or", "hamming_weight"] {
        let f = builtin_function(name, 3, 2, &[]).unwrap();
        let r: Vec<usize> = (0..=2)
            .map(|t| exact_redundancy(&f, t, DEFAULT_NODE_BUDGET).unwrap().r)
            .collect();
        assert!(r.windows(2).all(|w| w[0] <= w[1]), "{name}: {r:?}");
        assert_eq!(r[1], lower_bound(f.image_size(), 1).max(r[1]));
    }
}

#[test]
fn sphere_packing_and_upper_bound_chain() {
    for k in 2..=10 {
        for t in 1..=3 {
            assert!(sphere_packing_min_r(2, k, t) > 2 * t, "k={k} t={t}");
            if let Ok(upper) = upper_bound_binary(k, t) {
                let mid = t as f64 * ((2 * k) as f64).log2();
                assert!((2 * t) as f64 <= mid && mid < upper);
            }
        }
    }
    assert_eq!(ball_volume(2, 7, 1), 8u32.into());
}

#[test]
fn bch_redundancy_stays_below_binary_upper_bound() {
    for k in 2..=40 {
        for t in 1..=4 {
            if let Ok(upper) = upper_bound_binary(k, t) {
                let r = bch_systematic(k, t).unwrap().r;
                assert!((r as f64) < upper, "k={k} t={t}: {r} >= {upper}");
            }
        }
    }
}

#[test]
fn file_formats_round_trip() {
    for q in [2u32, 3, 4, 5, 7] {
        for k in 1..=4usize {
            if (q as u64).pow(k as u32) > 2401 {
                continue;
            }
            for b in Builtin::ALL {
                let aux: Vec<u64> = match b {
                    Builtin::Linear => (0..k as u64).map(|i| (i + 1) % u64::from(q)).collect(),
                    Builtin::Threshold => vec![1],
                    _ => Vec::new(),
                };
                let f = builtin_function(b.name(), q, k, &aux).unwrap();
                let text = write_function_file(&f);
                let back = parse_function_file(&text).unwrap();
                assert_eq!(back, f);
                assert_eq!(write_function_file(&back), text);
            }
            for t in 1..=2usize {
                let mut schemes = vec![or_scheme(u64::from(q), k, t).unwrap().scheme];
                if let Ok(rep) = rs_systematic(u64::from(q), k, t) {
                    schemes.push(rep.scheme);
                }
                if q == 2 {
                    schemes.push(bch_systematic(k, t).unwrap().scheme);
                }
                for s in schemes {
                    let text = write_scheme_file(&s);
                    let back = parse_scheme_file(&text).unwrap();
                    assert_eq!(back, s);
                    assert_eq!(write_scheme_file(&back), text);
                }
            }
        }
    }
}
